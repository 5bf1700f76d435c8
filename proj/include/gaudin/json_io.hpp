#pragma once

// JSON wire format.  One fixed shape per scalar kind so a rerun with the same
// inputs produces a byte-identical file:
//   rational        -> ["num", "den"]                 (canonical decimal strings)
//   exact complex   -> [["rn", "rd"], ["in", "id"]]
//   float complex   -> [re, im]                       (IEEE doubles)

#include <string>
#include <vector>

#include <json.hpp>

#include "gaudin/scalar.hpp"

namespace gaudin {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& v);
Json to_json(const CRat& v);
Json to_json(const Complex& v);
Json to_json(const std::vector<CRat>& v);
Json to_json(const std::vector<Complex>& v);

// dump with two-space indent and a trailing newline
std::string dump_json(const Json& j);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gaudin
