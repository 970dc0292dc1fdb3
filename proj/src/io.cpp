#include "bkv/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "bkv/errors.hpp"
#include "bkv/numtheory.hpp"

namespace bkv {

namespace {

constexpr const char* kMagic = "#bkv1";

struct Header {
  int weight2 = 0;
  long long level = 0;
  long long char_disc = 0;
  long long prec = 0;
  std::string label;
  bool has_lift_fields = false;
  long long t = 0;
  mpz_class a_t;
};

long long parse_ll(const std::string& s, const std::string& key) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("header field " + key + ": bad integer '" + s + "'");
  }
}

Header parse_header(const std::string& line) {
  std::istringstream ss(line);
  std::string tok;
  if (!(ss >> tok) || tok != kMagic)
    throw ParseError("coefficient file: missing #bkv1 magic");
  std::map<std::string, std::string> kv;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ParseError("header: token without '=': " + tok);
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"weight2", "level", "chardisc", "prec", "label"})
    if (!kv.count(key))
      throw ParseError(std::string("header: missing field ") + key);
  Header h;
  h.weight2 = static_cast<int>(parse_ll(kv["weight2"], "weight2"));
  h.level = parse_ll(kv["level"], "level");
  h.char_disc = parse_ll(kv["chardisc"], "chardisc");
  h.prec = parse_ll(kv["prec"], "prec");
  h.label = kv["label"];
  if (kv.count("t") || kv.count("at")) {
    if (!kv.count("t") || !kv.count("at"))
      throw ParseError("header: lift files need both t= and at=");
    h.has_lift_fields = true;
    h.t = parse_ll(kv["t"], "t");
    if (mpz_set_str(h.a_t.get_mpz_t(), kv["at"].c_str(), 10) != 0)
      throw ParseError("header field at: bad integer '" + kv["at"] + "'");
  }
  return h;
}

std::vector<mpz_class> parse_body(std::istream& in, long long prec) {
  std::vector<mpz_class> coeffs(static_cast<size_t>(prec));
  std::string line;
  for (long long n = 0; n < prec; ++n) {
    if (!std::getline(in, line))
      throw ParseError("coefficient file: truncated at index " +
                       std::to_string(n));
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("coefficient line " + std::to_string(n) +
                       ": missing tab separator");
    if (parse_ll(line.substr(0, tab), "index") != n)
      throw ParseError("coefficient file: expected index " +
                       std::to_string(n) + ", got '" + line.substr(0, tab) +
                       "'");
    std::string value = line.substr(tab + 1);
    if (value.empty() ||
        mpz_set_str(coeffs[n].get_mpz_t(), value.c_str(), 10) != 0)
      throw ParseError("coefficient line " + std::to_string(n) +
                       ": bad integer '" + value + "'");
  }
  while (std::getline(in, line))
    if (!line.empty())
      throw ParseError("coefficient file: trailing data after " +
                       std::to_string(prec) + " lines");
  return coeffs;
}

void check_label(const std::string& label) {
  if (label.empty())
    throw InvalidArgument("coefficient file: empty label");
  for (char c : label)
    if (c == ' ' || c == '\t' || c == '\n')
      throw InvalidArgument("coefficient file: label must not contain spaces");
}

std::string render(const Header& h, const std::vector<mpz_class>& coeffs) {
  std::ostringstream out;
  out << kMagic << " weight2=" << h.weight2 << " level=" << h.level
      << " chardisc=" << h.char_disc << " prec=" << h.prec
      << " label=" << h.label;
  if (h.has_lift_fields)
    out << " t=" << h.t << " at=" << h.a_t.get_str();
  out << '\n';
  for (long long n = 0; n < h.prec; ++n)
    out << n << '\t' << coeffs[static_cast<size_t>(n)].get_str() << '\n';
  return out.str();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

void write_text_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw IoError("rename '" + tmp + "' -> '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_form(const std::string& path, const FormRecord& f) {
  check_label(f.label);
  Header h;
  h.weight2 = f.weight2;
  h.level = f.level;
  h.char_disc = f.char_disc;
  h.prec = f.expansion.prec();
  h.label = f.label;
  write_text_atomic(path, render(h, f.expansion.coeffs()));
}

FormRecord read_form(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file: " + path);
  Header h = parse_header(line);
  if (h.has_lift_fields)
    throw InvalidArgument("read_form: '" + path + "' is a lift file");
  if (h.prec < 1) throw ParseError("header: prec must be >= 1");
  FormRecord f;
  f.weight2 = h.weight2;
  f.level = h.level;
  f.char_disc = h.char_disc;
  f.label = h.label;
  f.expansion = QExpansion(parse_body(in, h.prec));
  validate(f);
  return f;
}

void write_lift(const std::string& path, const LiftRecord& L) {
  check_label(L.source_label);
  Header h;
  h.weight2 = 2 * L.k + 1;
  h.level = L.level;
  h.char_disc = L.char_disc;
  h.prec = L.lifted.prec();
  h.label = L.source_label;
  h.has_lift_fields = true;
  h.t = L.t;
  h.a_t = L.a_t;
  write_text_atomic(path, render(h, L.lifted.coeffs()));
}

LiftRecord read_lift(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file: " + path);
  Header h = parse_header(line);
  if (!h.has_lift_fields)
    throw InvalidArgument("read_lift: '" + path + "' is not a lift file");
  if (h.prec < 2) throw ParseError("header: lift prec must be >= 2");
  if (h.weight2 % 2 == 0)
    throw InvalidArgument("read_lift: source weight2 must be odd");
  if (h.t < 1 || !is_squarefree(h.t))
    throw InvalidArgument("read_lift: t must be positive squarefree");
  LiftRecord L;
  L.source_label = h.label;
  L.t = h.t;
  L.a_t = h.a_t;
  L.k = (h.weight2 - 1) / 2;
  L.level = h.level;
  L.char_disc = h.char_disc;
  L.convention = (h.level == 4) ? LiftConvention::kohnen_plus
                                : LiftConvention::shimura_niwa;
  L.lifted = QExpansion(parse_body(in, h.prec));
  if (L.lifted.coefficient(1) != L.a_t)
    throw InvalidArgument("read_lift: A_t(1) != a(t) in '" + path + "'");
  return L;
}

bool is_lift_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file: " + path);
  return parse_header(line).has_lift_fields;
}

}  // namespace bkv
