#include "gaudin/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gaudin {

Json to_json(const Rational& v) {
  return Json::array({v.get_num().get_str(), v.get_den().get_str()});
}

Json to_json(const CRat& v) { return Json::array({to_json(v.re), to_json(v.im)}); }

Json to_json(const Complex& v) { return Json::array({v.real(), v.imag()}); }

Json to_json(const std::vector<CRat>& v) {
  Json out = Json::array();
  for (const CRat& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const Complex& x : v) out.push_back(to_json(x));
  return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, dump_json(j));
}

Json read_json_file(const std::string& path) {
  return Json::parse(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace gaudin
