#include "rbwv/json_io.hpp"

namespace rbwv {

Json report_json(const VerifyReport& report) {
  Json out;
  out["window"] = report.window;
  out["weight"] = to_string(report.weight);
  out["pass"] = report.pass();
  Json fails = Json::array();
  for (const auto& f : report.failures) {
    Json item;
    item["x"] = to_string(f.x);
    item["y"] = to_string(f.y);
    item["defect"] = to_string(f.defect);
    fails.push_back(std::move(item));
  }
  out["failures"] = std::move(fails);
  return out;
}

Json report_json(const ObstructionReport& report) {
  Json out;
  out["window"] = report.window;
  out["pass"] = report.pass();
  Json fails = Json::array();
  for (const auto& f : report.failures) {
    Json item;
    item["m"] = f.m;
    item["n"] = f.n;
    item["value"] = to_string(f.value);
    fails.push_back(std::move(item));
  }
  out["failures"] = std::move(fails);
  return out;
}

Json report_json(const CybeReport& report) {
  Json out;
  out["window"] = report.window;
  out["pass"] = report.pass();
  Json fails = Json::array();
  for (const auto& f : report.failures) {
    Json item;
    item["i"] = to_string(f.i);
    item["j"] = to_string(f.j);
    item["k"] = to_string(f.k);
    item["value"] = to_string(f.value);
    fails.push_back(std::move(item));
  }
  out["failures"] = std::move(fails);
  return out;
}

Json report_json(const ScanReport& report) {
  Json out;
  out["window"] = report.window;
  out["pass"] = report.pass();
  Json fails = Json::array();
  for (const auto& f : report.failures) {
    Json item;
    item["x"] = to_string(f.x);
    item["y"] = to_string(f.y);
    item["z"] = to_string(f.z);
    item["first"] = to_string(f.first);
    item["second"] = to_string(f.second);
    fails.push_back(std::move(item));
  }
  out["failures"] = std::move(fails);
  return out;
}

Json table_json(const SolutionTable& table) {
  Json out;
  out["window"] = table.window;
  Json f = Json::object();
  for (long m = -table.window; m <= table.window; ++m) {
    if (m == 0 && table.f0_free())
      continue;
    auto it = table.f.find(m);
    f[std::to_string(m)] = it == table.f.end() ? "0" : to_string(it->second);
  }
  out["f"] = std::move(f);
  Json free = Json::array();
  for (const auto& name : table.free_params)
    free.push_back(name);
  out["free"] = std::move(free);
  if (table.theta)
    out["theta"] = to_string(*table.theta);
  if (table.mu)
    out["mu"] = to_string(*table.mu);
  if (table.nu)
    out["nu"] = to_string(*table.nu);
  if (!table.anchor.empty())
    out["anchor"] = table.anchor;
  return out;
}

Json match_json(const MatchResult& result) {
  Json out = Json::array();
  for (const auto& m : result.matches)
    out.push_back(m.text());
  return out;
}

Json rows_json(const std::vector<TableRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json item;
    item["x"] = to_string(r.x);
    item["y"] = to_string(r.y);
    item["xy"] = to_string(r.xy);
    out.push_back(std::move(item));
  }
  return out;
}

namespace {

Json index_set_json(const IndexSet& set) {
  Json out;
  switch (set.kind) {
    case IndexSet::Kind::All:
      out["kind"] = "all";
      break;
    case IndexSet::Kind::Finite: {
      out["kind"] = "finite";
      Json pts = Json::array();
      for (long p : set.points)
        pts.push_back(p);
      out["points"] = std::move(pts);
      break;
    }
    case IndexSet::Kind::Congruence:
      out["kind"] = "congruence";
      out["residue"] = set.residue;
      out["modulus"] = set.modulus;
      break;
    case IndexSet::Kind::AtLeast:
      out["kind"] = "geq";
      out["a"] = set.bound;
      break;
    case IndexSet::Kind::AtMost:
      out["kind"] = "leq";
      out["a"] = set.bound;
      break;
  }
  return out;
}

std::string affine_in_m(long scale, long offset) {
  std::string s;
  if (scale == 0)
    return std::to_string(offset);
  if (scale == 1)
    s = "m";
  else if (scale == -1)
    s = "-m";
  else
    s = std::to_string(scale) + "m";
  if (offset > 0)
    s += "+" + std::to_string(offset);
  else if (offset < 0)
    s += std::to_string(offset);
  return s;
}

std::string builder_text(const SymbolBuilder& b) {
  switch (b.kind) {
    case SymbolKind::L: return "L(" + affine_in_m(b.scale, b.offset) + ")";
    case SymbolKind::Ld: return "Ld(" + affine_in_m(b.scale, b.offset) + ")";
    case SymbolKind::C: return "C";
    case SymbolKind::Cd: return "Cd";
  }
  return "?";
}

std::string coef_text(const BandCoef& c) {
  if (c.den_a == 0 && c.den_b == 1)
    return to_string(c.num);
  return to_string(c.num) + "/(" + affine_in_m(c.den_a, c.den_b) + ")";
}

}  // namespace

Json tensor_json(const FormalTensor& tensor) {
  Json out;
  out["signature"] = to_string(tensor.signature());
  Json bands = Json::array();
  for (const Band& band : tensor.bands()) {
    Json item;
    item["set"] = index_set_json(band.set);
    item["coef"] = coef_text(band.coef);
    item["left"] = builder_text(band.left);
    item["right"] = builder_text(band.right);
    bands.push_back(std::move(item));
  }
  out["bands"] = std::move(bands);
  return out;
}

}  // namespace rbwv
