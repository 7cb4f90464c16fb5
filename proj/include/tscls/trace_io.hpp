#pragma once

// Trace serialization used by the command-line front end.
//
// CSV: header `time,step,rule,path,rate,<observable...>`, then event rows
// (observable cells empty) and sample rows (rule/path/rate empty) merged in
// time order. Reals carry 17 significant digits.
//
// JSON: one object per line, tagged "kind": "event" or "sample".

#include <ostream>
#include <string>

#include "tscls/engine.hpp"

namespace tscls {

void write_csv(std::ostream& os, const Trace& trace);
void write_json(std::ostream& os, const Trace& trace);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(const std::string& s);

}  // namespace tscls
