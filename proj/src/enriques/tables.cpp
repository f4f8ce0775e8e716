#include "salemforge/enriques/tables.hpp"

#include <algorithm>
#include <chrono>

#include "salemforge/enriques/ruleout.hpp"
#include "salemforge/exactalg/gf2poly.hpp"
#include "salemforge/exactalg/salem.hpp"

namespace salemforge {

namespace {

std::vector<Gf2Factor> fixture_factors(const io::Json& j) {
  std::vector<Gf2Factor> out;
  for (const auto& f : j) out.push_back({Gf2Poly::from_int_poly(parse_poly(f.at(0).get<std::string>())), f.at(1).get<int>()});
  std::sort(out.begin(), out.end(), [](const Gf2Factor& a, const Gf2Factor& b) { return a.factor < b.factor; });
  return out;
}

bool same(const std::vector<Gf2Factor>& a, const std::vector<Gf2Factor>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].factor != b[i].factor || a[i].multiplicity != b[i].multiplicity) return false;
  return true;
}

Rat decimal_to_rat(const std::string& s, int* digits) {
  auto dot = s.find('.');
  std::string whole = s.substr(0, dot), frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  *digits = static_cast<int>(frac.size());
  Int den = 1;
  for (int i = 0; i < *digits; ++i) den *= 10;
  return Rat(Int(whole + frac), den);
}

// Largest real root as a certified interval.
RealAlgebraic largest_root(const IntPoly& p) {
  auto roots = isolate_real_roots(p);
  if (roots.empty()) throw PreconditionError("no real root");
  return RealAlgebraic(p, roots.back());
}

}  // namespace

std::string decimal_string(const Rat& x, int digits) {
  Int den = 1;
  for (int i = 0; i < digits; ++i) den *= 10;
  Int num = x.get_num() * den;
  Int v = abs(num) / x.get_den();
  std::string s = v.get_str();
  while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
  std::string out = s.substr(0, s.size() - static_cast<std::size_t>(digits));
  if (digits > 0) out += "." + s.substr(s.size() - static_cast<std::size_t>(digits));
  return num < 0 ? "-" + out : out;
}

bool TableReport::all_match() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.match; });
}

io::Json TableReport::to_json() const {
  io::Json j;
  j["table"] = table;
  j["all_match"] = all_match();
  j["seconds"] = seconds;
  io::Json rs = io::Json::array();
  for (const auto& r : rows)
    rs.push_back({{"key", r.key}, {"expected", r.expected}, {"computed", r.computed}, {"match", r.match},
                  {"detail", r.detail}});
  j["rows"] = rs;
  return j;
}

bool truncation_brackets(const std::string& decimal, const IntPoly& p, std::string* interval) {
  int d = 0;
  Rat lo = decimal_to_rat(decimal, &d);
  Int den = 1;
  for (int i = 0; i < d; ++i) den *= 10;
  Rat hi = lo + Rat(1, den);
  RealAlgebraic r = largest_root(p);
  r.refine(Rat(1, den * 100));
  const RatInterval& iv = r.interval();
  if (interval) *interval = "(" + decimal_string(iv.lo, d + 2) + ", " + decimal_string(iv.hi, d + 2) + "]";
  return iv.lo >= lo && iv.hi < hi;
}

TableReport reproduce_table(int n, const std::string& data_dir) {
  if (n < 1 || n > 3) throw PreconditionError("table must be 1, 2 or 3");
  auto t0 = std::chrono::steady_clock::now();
  io::Json fx = io::read_file(data_dir + "/tables/table" + std::to_string(n) + ".json");
  TableReport rep;
  rep.table = n;
  std::size_t i = 0;
  for (const auto& row : fx.at("rows")) {
    TableRow r;
    IntPoly p = parse_poly(row.at("polynomial").get<std::string>());
    if (n == 2) {
      unsigned k = row.at("k").get<unsigned>();
      r.key = "Phi_" + std::to_string(k);
      std::vector<Gf2Factor> want = fixture_factors(row.at("mod2_factors"));
      std::vector<Gf2Factor> got = mod2_factor(cyclotomic(k));
      r.expected = p.to_string() + " ; " + factorization_string(want);
      r.computed = cyclotomic(k).to_string() + " ; " + factorization_string(got);
      if (cyclotomic(k) != p) r.detail = "polynomial differs";
      else if (!same(want, got)) r.detail = "mod-2 factorization differs";
    } else {
      r.key = row.at("name").get<std::string>();
      std::string value = row.at("value").get<std::string>();
      std::string iv;
      bool br = truncation_brackets(value, p, &iv);
      r.expected = value;
      r.computed = iv;
      if (n == 1) {
        ++i;
        SalemCheck sc = is_salem(p);
        std::vector<Gf2Factor> want = fixture_factors(row.at("mod2_factors"));
        std::vector<Gf2Factor> got = mod2_factor(p);
        r.expected += " ; " + factorization_string(want);
        r.computed += " ; " + factorization_string(got);
        if (i > 8 || salem_candidate(static_cast<int>(i)) != p) r.detail = "polynomial differs from the built-in S_i";
        else if (!sc.salem) r.detail = "is_salem rejects: " + sc.reason;
        else if (!same(want, got)) r.detail = "mod-2 factorization differs";
      } else if (p.degree() > 2) {
        SalemCheck sc = is_salem(p);
        if (!sc.salem) r.detail = "is_salem rejects: " + sc.reason;
      }
      if (r.detail.empty() && !br) r.detail = "value not bracketed by the isolating interval";
    }
    r.match = r.detail.empty();
    rep.rows.push_back(std::move(r));
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace salemforge
