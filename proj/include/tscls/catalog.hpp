#pragma once

// Ready-made rule schemata for common biochemical events, rule transformers
// that add catalysts and inhibitors, and the built-in lactose operon model.
//
// Generated rules count with the default type of each element
// (default_type_name) and write kinetic constants as literals.

#include <optional>
#include <utility>

#include "tscls/core.hpp"
#include "tscls/model.hpp"

namespace tscls {

/// a | $X -> b | $X, rate (n + 1) * k with n the other free a's.
RewriteRule state_change_rule(const Element& a, const Element& b, double k, std::string id = "state_change");

/// a | b | $X -> c | $X, rate (n1 + 1) * (n2 + 1) * k.
RewriteRule complexation_rule(const Element& a, const Element& b, const Element& c, double k,
                              std::string id = "complexation");

/// c | $X -> a | b | $X, rate (n + 1) * k.
RewriteRule decomplexation_rule(const Element& c, const Element& a, const Element& b, double k,
                                std::string id = "decomplexation");

struct OsmosisParams {
  double surface = 1.0;   // S
  double volume = 1.0;    // V
  double volume_a = 1.0;  // molecular volume of the crossing element
  double volume_b = 1.0;  // molecular volume of the solute
  double k = 1.0;         // flow constant
  double k_c = 1.0;       // catalyst / inhibitor factor (modes other than plain)
};

struct OsmosisMode {
  enum class Kind { Plain, Catalysed, Inhibited };
  Kind kind = Kind::Plain;
  std::optional<Element> agent;  // element on the membrane for the other kinds

  static OsmosisMode plain() { return {}; }
  static OsmosisMode catalysed(Element c) { return {Kind::Catalysed, std::move(c)}; }
  static OsmosisMode inhibited(Element c) { return {Kind::Inhibited, std::move(c)}; }
};

/// Outward and inward membrane crossing of `a` driven by the concentration of
/// `b` on either side:
///   <~x>[ $X | a ] | $Y  ->  <~x>[ $X ] | a | $Y
///   <~x>[ $X ] | a | $Y  ->  <~x>[ $X | a ] | $Y
/// The two rate functions are negations of each other, so for a given state
/// at most one direction has a positive rate.
std::pair<RewriteRule, RewriteRule> osmosis_rules(const Element& a, const Element& b, const OsmosisParams& p,
                                                  const OsmosisMode& mode = OsmosisMode::plain());

/// Multiplies the rate by (n_c * k + 1), n_c counting free c's next to the redex.
RewriteRule add_catalyst(const RewriteRule& rule, const Element& c, double k);
/// Divides the rate by (if n_d == 0 then 1 else n_d * k).
RewriteRule add_inhibitor(const RewriteRule& rule, const Element& d, double k);
/// Both at once: rate * (n_c * k + 1) / (if n_d == 0 then 1 else n_d * k_inh).
RewriteRule add_both(const RewriteRule& rule, const Element& c, double k, const Element& d, double k_inh);

/// Lactose operon regulation in E. coli: rules R1-R15 and the initial state
/// with 100 lactose molecules outside the bacterium.
ModelFile lac_operon_model();

}  // namespace tscls
