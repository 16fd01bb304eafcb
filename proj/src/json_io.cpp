// JSON encoding and decoding for the core value types.
#include "spancalc/json_io.hpp"

#include <utility>
#include <vector>

#include "cell_detail.hpp"

namespace spancalc {
namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object()) fail(errc::invalid, "expected a json object");
  auto it = j.find(key);
  if (it == j.end()) fail(errc::invalid, std::string("missing field ") + key);
  return *it;
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer())
    fail(errc::invalid, std::string("field ") + key + " must be an integer");
  return v.get<int>();
}

std::vector<int> int_list(const json& v, const char* what) {
  if (!v.is_array())
    fail(errc::invalid, std::string(what) + " must be an array");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer())
      fail(errc::invalid, std::string(what) + " entries must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::string iv_key(int lo, int hi) {
  return std::to_string(lo) + "," + std::to_string(hi);
}

std::pair<int, int> parse_iv_key(const std::string& key, int n) {
  size_t comma = key.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == key.size())
    fail(errc::invalid, "interval key must look like \"i,j\"");
  int lo = 0, hi = 0;
  try {
    size_t used = 0;
    lo = std::stoi(key.substr(0, comma), &used);
    if (used != comma) fail(errc::invalid, "bad interval key");
    hi = std::stoi(key.substr(comma + 1), &used);
    if (used != key.size() - comma - 1) fail(errc::invalid, "bad interval key");
  } catch (const std::exception&) {
    fail(errc::invalid, std::string("bad interval key ") + key);
  }
  if (lo < 0 || hi < lo || hi > n)
    fail(errc::invalid, std::string("interval key out of range: ") + key);
  return {lo, hi};
}

}  // namespace

json to_json(const FinSet& s) { return json{{"size", s.size}}; }

json to_json(const SetMap& m) {
  return json{{"dom", m.dom}, {"cod", m.cod}, {"values", m.values}};
}

json to_json(const Span1& s) {
  return json{{"left", to_json(s.left_foot)},
              {"apex", to_json(s.apex)},
              {"right", to_json(s.right_foot)},
              {"lmap", to_json(s.lmap)},
              {"rmap", to_json(s.rmap)}};
}

json to_json(const SpanCell& f) {
  json sets = json::object();
  for (int lo = 0; lo <= f.n; ++lo)
    for (int hi = lo; hi <= f.n; ++hi)
      sets[iv_key(lo, hi)] =
          to_json(f.sets[static_cast<size_t>(detail::iv_index(f.n, lo, hi))]);
  json maps = json::array();
  std::vector<std::pair<int, int>> ivs(
      static_cast<size_t>(detail::iv_count(f.n)));
  for (int lo = 0; lo <= f.n; ++lo)
    for (int hi = lo; hi <= f.n; ++hi)
      ivs[static_cast<size_t>(detail::iv_index(f.n, lo, hi))] = {lo, hi};
  for (const auto& [key, m] : f.maps) {
    auto [flo, fhi] = ivs[static_cast<size_t>(key.first)];
    auto [tlo, thi] = ivs[static_cast<size_t>(key.second)];
    maps.push_back(json{{"from", iv_key(flo, fhi)},
                        {"to", iv_key(tlo, thi)},
                        {"map", to_json(m)}});
  }
  return json{{"n", f.n}, {"sets", sets}, {"maps", maps}};
}

json to_json(const NatMatrix& m) {
  return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", m.entries}};
}

FinSet finset_from_json(const json& j) {
  int n = int_field(j, "size");
  if (n < 0) fail(errc::invalid, "set size must be nonnegative");
  return make_set(n);
}

SetMap map_from_json(const json& j) {
  int dom = int_field(j, "dom");
  int cod = int_field(j, "cod");
  std::vector<int> values = int_list(field(j, "values"), "values");
  if (dom < 0 || cod < 0) fail(errc::invalid, "map endpoints must be sets");
  if (static_cast<int>(values.size()) != dom)
    fail(errc::invalid, "values length must equal dom");
  for (int v : values)
    if (v < 0 || v >= cod) fail(errc::invalid, "map value outside codomain");
  return make_map(dom, cod, std::move(values));
}

Span1 span_from_json(const json& j) {
  FinSet left = finset_from_json(field(j, "left"));
  FinSet apex = finset_from_json(field(j, "apex"));
  FinSet right = finset_from_json(field(j, "right"));
  SetMap lmap = map_from_json(field(j, "lmap"));
  SetMap rmap = map_from_json(field(j, "rmap"));
  if (lmap.dom != apex.size || rmap.dom != apex.size)
    fail(errc::invalid, "span legs must start at the apex");
  if (lmap.cod != left.size || rmap.cod != right.size)
    fail(errc::invalid, "span legs must land in the feet");
  return make_span(left, apex, right, std::move(lmap), std::move(rmap));
}

SpanCell cell_from_json(const json& j) {
  SpanCell f;
  f.n = int_field(j, "n");
  if (f.n < 0) fail(errc::invalid, "cell dimension must be nonnegative");
  const json& sets = field(j, "sets");
  if (!sets.is_object()) fail(errc::invalid, "sets must be an object");
  f.sets.assign(static_cast<size_t>(detail::iv_count(f.n)), FinSet{});
  std::vector<bool> seen(f.sets.size(), false);
  for (auto it = sets.begin(); it != sets.end(); ++it) {
    auto [lo, hi] = parse_iv_key(it.key(), f.n);
    int t = detail::iv_index(f.n, lo, hi);
    if (seen[static_cast<size_t>(t)])
      fail(errc::invalid, std::string("duplicate interval ") + it.key());
    seen[static_cast<size_t>(t)] = true;
    f.sets[static_cast<size_t>(t)] = finset_from_json(it.value());
  }
  for (bool s : seen)
    if (!s) fail(errc::invalid, "sets must cover every interval");
  const json& maps = field(j, "maps");
  if (!maps.is_array()) fail(errc::invalid, "maps must be an array");
  for (const json& entry : maps) {
    const json& from = field(entry, "from");
    const json& to = field(entry, "to");
    if (!from.is_string() || !to.is_string())
      fail(errc::invalid, "map endpoints must be interval keys");
    auto [flo, fhi] = parse_iv_key(from.get<std::string>(), f.n);
    auto [tlo, thi] = parse_iv_key(to.get<std::string>(), f.n);
    if (tlo < flo || thi > fhi)
      fail(errc::invalid, "map must go to a contained interval");
    std::pair<int, int> key = {detail::iv_index(f.n, flo, fhi),
                               detail::iv_index(f.n, tlo, thi)};
    if (f.maps.count(key)) fail(errc::invalid, "duplicate map entry");
    f.maps[key] = map_from_json(field(entry, "map"));
  }
  if (!validate_cell(f)) fail(errc::invalid, "cell does not validate");
  return f;
}

NatMatrix matrix_from_json(const json& j) {
  NatMatrix m;
  m.rows = int_field(j, "rows");
  m.cols = int_field(j, "cols");
  if (m.rows < 0 || m.cols < 0)
    fail(errc::invalid, "matrix shape must be nonnegative");
  const json& entries = field(j, "entries");
  if (!entries.is_array()) fail(errc::invalid, "entries must be an array");
  for (const json& e : entries) {
    if (!e.is_number_integer())
      fail(errc::invalid, "entries must be integers");
    m.entries.push_back(e.get<std::int64_t>());
  }
  if (m.entries.size() !=
      static_cast<size_t>(m.rows) * static_cast<size_t>(m.cols))
    fail(errc::invalid, "entries length must equal rows times cols");
  for (std::int64_t e : m.entries)
    if (e < 0) fail(errc::invalid, "matrix entries must be nonnegative");
  return m;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::invalid, std::string("json parse error: ") + e.what());
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace spancalc
