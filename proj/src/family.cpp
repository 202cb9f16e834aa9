#include "cwb/family.hpp"

#include <charconv>

namespace cwb {

namespace {

int64_t to_int(const std::string& s, const std::string& what) {
  int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(errc::parse, "bad integer in " + what + ": '" + s + "'");
  return v;
}

}  // namespace

std::vector<int64_t> parse_range(const std::string& text) {
  size_t dots = text.find("..");
  if (dots == std::string::npos) fail(errc::parse, "range must be a..b[:step]: '" + text + "'");
  int64_t a = to_int(text.substr(0, dots), "range start");
  std::string rest = text.substr(dots + 2);
  int64_t step = 1;
  size_t colon = rest.find(':');
  if (colon != std::string::npos) {
    step = to_int(rest.substr(colon + 1), "range step");
    rest = rest.substr(0, colon);
  }
  int64_t b = to_int(rest, "range end");
  if (step < 1) fail(errc::parse, "range step must be >= 1");
  if (b < a) fail(errc::parse, "range end before start");
  std::vector<int64_t> out;
  for (int64_t v = a; v <= b; v += step) out.push_back(v);
  return out;
}

std::vector<int64_t> parse_int_list(const std::string& text) {
  std::vector<int64_t> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string part = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    out.push_back(to_int(part, "list"));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string FamilySpec::member_text(size_t i) const {
  if (i >= values.size()) fail(errc::internal, "family member index out of range");
  size_t comma = base.find(',');
  std::string head = base.substr(0, comma);
  std::string rest = comma == std::string::npos ? "" : base.substr(comma);
  const char* var = head == "cycle" ? "n" : head == "psl2" ? "p" : "m";
  std::string text =
      head + ":" + var + "=" + std::to_string(values[i]) + rest;
  size_t ph = text.find("{km}");
  if (ph != std::string::npos) {
    if (km.empty()) fail(errc::parse, "family base uses {km} but no --km was given");
    text = text.substr(0, ph) + std::to_string(km.at(i)) + text.substr(ph + 4);
  }
  return text;
}

FamilySpec FamilySpec::parse(const std::string& base, const std::string& range,
                             const std::string& km_list, const std::string& primes) {
  FamilySpec f;
  f.base = base;
  if (base.rfind("limit", 0) == 0) fail(errc::parse, "limit groups do not form a family");
  if (!primes.empty()) {
    if (!range.empty()) fail(errc::parse, "give either --range or --primes, not both");
    f.values = parse_int_list(primes);
  } else {
    if (range.empty()) fail(errc::parse, "family needs --range (or --primes for psl2)");
    f.values = parse_range(range);
  }
  if (!km_list.empty()) f.km = parse_int_list(km_list);
  if (f.values.empty()) fail(errc::parse, "family range is empty");
  // broadcasting: a fixed main parameter may sweep k_m, and vice versa
  if (f.km.size() > 1 && f.values.size() == 1) {
    f.values.assign(f.km.size(), f.values[0]);
    f.varies_km = true;
  } else if (f.km.size() == 1 && f.values.size() > 1) {
    f.km.assign(f.values.size(), f.km[0]);
  } else if (!f.km.empty() && f.km.size() != f.values.size()) {
    fail(errc::parse, "--km must list one value or one per family member");
  }
  for (size_t i = 0; i < f.size(); ++i) f.member(i);  // validate every member now
  return f;
}

}  // namespace cwb
