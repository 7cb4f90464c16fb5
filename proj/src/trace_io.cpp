#include "tscls/trace_io.hpp"

#include <json.hpp>

#include "tscls/syntax.hpp"

namespace tscls {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

std::string observed_text(const ObservableSpec& spec, const ObservedValue& v) {
  if (spec.scope == ObservableSpec::Scope::Global) return std::to_string(v.total);
  std::string out;
  for (const auto& [path, n] : v.per_compartment) {
    if (!out.empty()) out += ";";
    out += path.str() + "=" + std::to_string(n);
  }
  return out;
}

// Calls on_event / on_sample in output order: a sample taken after k events
// follows event k.
template <class OnEvent, class OnSample>
void merged(const Trace& trace, OnEvent on_event, OnSample on_sample) {
  std::size_t s = 0;
  for (const auto& e : trace.events) {
    while (s < trace.samples.size() && trace.samples[s].step < e.step) on_sample(trace.samples[s++]);
    on_event(e);
  }
  while (s < trace.samples.size()) on_sample(trace.samples[s++]);
}

}  // namespace

void write_csv(std::ostream& os, const Trace& trace) {
  os << "time,step,rule,path,rate";
  for (const auto& o : trace.observables) os << ',' << csv_field(o.element.name());
  os << '\n';
  const std::string blanks(trace.observables.size(), ',');
  merged(
      trace,
      [&](const TraceEvent& e) {
        os << format_real17(e.time) << ',' << e.step << ',' << csv_field(e.rule_id) << ',' << csv_field(e.path.str())
           << ',' << format_real17(e.rate) << blanks << '\n';
      },
      [&](const Sample& s) {
        os << format_real17(s.time) << ',' << s.step << ",,,";
        for (std::size_t i = 0; i < s.values.size(); ++i) {
          os << ',' << csv_field(observed_text(trace.observables[i], s.values[i]));
        }
        os << '\n';
      });
}

void write_json(std::ostream& os, const Trace& trace) {
  using nlohmann::json;
  merged(
      trace,
      [&](const TraceEvent& e) {
        json j = {{"kind", "event"},          {"step", e.step}, {"time", e.time}, {"rule", e.rule_id},
                  {"path", e.path.str()},     {"rate", e.rate}, {"total_exit_rate", e.total_exit_rate}};
        os << j.dump() << '\n';
      },
      [&](const Sample& s) {
        json obs = json::object();
        for (std::size_t i = 0; i < s.values.size(); ++i) {
          const auto& spec = trace.observables[i];
          if (spec.scope == ObservableSpec::Scope::Global) {
            obs[spec.element.name()] = s.values[i].total;
          } else {
            json per = json::object();
            for (const auto& [path, n] : s.values[i].per_compartment) per[path.str()] = n;
            obs[spec.element.name()] = {{"total", s.values[i].total}, {"compartments", per}};
          }
        }
        json j = {{"kind", "sample"}, {"step", s.step}, {"time", s.time}, {"observables", obs}};
        os << j.dump() << '\n';
      });
}

}  // namespace tscls
