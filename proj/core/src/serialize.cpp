#include "densitylab/serialize.hpp"

#include <cstdio>

#include "densitylab/dsl.hpp"

namespace densitylab {

namespace {

std::string approx6(const Rat& q) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", to_double(q));
  return buf;
}

const char* kind_name(DensityValueKind kind) {
  switch (kind) {
    case DensityValueKind::Exact:
      return "exact";
    case DensityValueKind::Enclosure:
      return "enclosure";
    case DensityValueKind::LowerBound:
      return "lower_bound";
    case DensityValueKind::Estimate:
      return "estimate";
  }
  return "?";
}

}  // namespace

Json to_json(const DensityValue& value) {
  return Json{{"kind", kind_name(value.kind)}, {"lo", rat_str(value.lo)}, {"hi", rat_str(value.hi)}};
}

namespace {

Json payload_json(const Certificate::Boundedness& c) {
  return Json{{"max_element", c.max_element.get_str()}, {"cardinality", c.cardinality.get_str()}};
}

Json payload_json(const Certificate::InfiniteWitness& c) {
  Json j;
  j["pattern"] = c.pattern ? Json(print_expr(*c.pattern)) : Json(nullptr);
  if (!c.growth.empty()) {
    Json rows = Json::array();
    for (const auto& [x, count] : c.growth) {
      rows.push_back(Json{{"x", x.get_str()}, {"count", count.get_str()}});
    }
    j["growth"] = std::move(rows);
  }
  if (c.density_lower_bound > 0) j["density_lower_bound"] = rat_str(c.density_lower_bound);
  return j;
}

Json payload_json(const Certificate::Divergence& c) {
  Json j;
  j["blocks"] = c.scheme ? Json(c.scheme->text()) : Json("dyadic-scales");
  if (c.index) j["index"] = print_expr(*c.index);
  if (c.shift != 0) j["shift"] = c.shift.get_str();
  Json rows = Json::array();
  for (const auto& [block, bound] : c.per_block) {
    rows.push_back(Json{{"block", block.get_str()}, {"lower_bound", rat_str(bound)}});
  }
  j["per_block"] = std::move(rows);
  j["running_sum"] = rat_str(c.running_sum);
  if (c.tail == Certificate::Divergence::Tail::UniformBound) {
    j["tail"] = Json{{"kind", "uniform"}, {"bound", rat_str(c.uniform_bound)}};
  } else {
    j["tail"] = Json{{"kind", "harmonic-family"},
                     {"alpha", rat_str(c.harmonic_alpha)},
                     {"gamma", c.harmonic_gamma.get_str()}};
  }
  return j;
}

Json payload_json(const Certificate::Convergence& c) {
  Json j;
  j["mode"] = c.mode == Certificate::Convergence::Mode::SummableTail ? "summable-tail"
                                                                     : "density-tail";
  j["scales"] = c.scheme ? Json(c.scheme->text()) : Json("dyadic-scales");
  j["per_scale"] = c.per_scale.get_str();
  j["scale_start"] = c.scale_start;
  if (c.tail_bound > 0) j["tail_bound"] = rat_str(c.tail_bound);
  Json rows = Json::array();
  for (const auto& [scale, count] : c.probed) {
    rows.push_back(Json{{"scale", scale.get_str()}, {"count", count.get_str()}});
  }
  j["probed"] = std::move(rows);
  return j;
}

Json payload_json(const Certificate::ComponentTable& c) {
  Json rows = Json::array();
  for (const auto& row : c.rows) {
    rows.push_back(Json{{"piece", row.piece},
                        {"finite", row.finite},
                        {"bound", row.bound.get_str()}});
  }
  return Json{{"components", std::move(rows)}};
}

Json payload_json(const Certificate::IntervalPattern& c) {
  return Json{{"scheme", c.scheme.text()}, {"index", print_expr(c.index)}};
}

}  // namespace

Json to_json(const Certificate& certificate) {
  Json j = std::visit([](const auto& payload) { return payload_json(payload); },
                      certificate.payload);
  Json out;
  out["type"] = certificate.type_name();
  out.update(j);
  return out;
}

Json to_json(const Verdict& verdict) {
  Json j;
  switch (verdict.decision) {
    case Decision::In:
      j["decision"] = "in";
      break;
    case Decision::NotIn:
      j["decision"] = "not_in";
      break;
    case Decision::Unknown:
      j["decision"] = "unknown";
      break;
  }
  switch (verdict.reason) {
    case UnknownReason::None:
      j["reason"] = nullptr;
      break;
    case UnknownReason::Budget:
      j["reason"] = "budget";
      break;
    case UnknownReason::UnsupportedShape:
      j["reason"] = "unsupported-shape";
      break;
  }
  j["certificate"] = verdict.certificate ? to_json(*verdict.certificate) : Json(nullptr);
  if (!verdict.note.empty()) j["note"] = verdict.note;
  return j;
}

Json to_json(const PairCertificate& certificate) {
  Json blocks = Json::array();
  for (const Run& r : certificate.shared_blocks) {
    blocks.push_back(Json{{"lo", r.lo.get_str()}, {"hi", r.hi.get_str()}});
  }
  return Json{{"shift", certificate.shift.get_str()},
              {"cutoff", certificate.cutoff.get_str()},
              {"bound", certificate.bound.get_str()},
              {"shared_blocks", std::move(blocks)}};
}

Json to_json(const AllShiftCertificate& certificate) {
  Json codes = Json::array();
  for (const Int& c : certificate.shared_codes) codes.push_back(c.get_str());
  return Json{{"scheme", certificate.scheme.text()},
              {"x", certificate.x.text()},
              {"y", certificate.y.text()},
              {"shared_codes", std::move(codes)}};
}

Json to_json(const Report& report, bool include_timing) {
  Json checks = Json::array();
  for (const CheckRecord& c : report.checks) {
    const char* status = c.status == CheckRecord::Status::Pass   ? "pass"
                         : c.status == CheckRecord::Status::Fail ? "fail"
                                                                 : "undecided";
    Json row{{"name", c.name},
             {"inputs", c.inputs},
             {"expected", c.expected},
             {"got", c.got},
             {"status", status}};
    if (!c.certificate.empty()) row["certificate"] = c.certificate;
    checks.push_back(std::move(row));
  }
  Json j{{"suite", report.suite},
         {"passed", report.passed()},
         {"failed", report.failed()},
         {"undecided", report.skipped()},
         {"checks", std::move(checks)}};
  if (include_timing) j["wall_ms"] = report.wall_ms;
  return j;
}

std::string verdict_text(const Verdict& verdict) {
  std::string out;
  switch (verdict.decision) {
    case Decision::In:
      out = "in";
      break;
    case Decision::NotIn:
      out = "not in";
      break;
    case Decision::Unknown:
      out = verdict.reason == UnknownReason::Budget ? "unknown (budget)"
                                                    : "unknown (unsupported shape)";
      break;
  }
  if (verdict.certificate) out += " [" + verdict.certificate->type_name() + "]";
  if (!verdict.note.empty()) out += " -- " + verdict.note;
  return out;
}

std::string density_value_text(const DensityValue& value, bool approximate) {
  std::string out;
  switch (value.kind) {
    case DensityValueKind::Exact:
      out = rat_str(value.lo);
      if (approximate) out += " (~" + approx6(value.lo) + ")";
      return out;
    case DensityValueKind::Enclosure:
      out = "[" + rat_str(value.lo) + ", " + rat_str(value.hi) + "]";
      if (approximate) out += " (~[" + approx6(value.lo) + ", " + approx6(value.hi) + "])";
      return out;
    case DensityValueKind::LowerBound:
      out = ">= " + rat_str(value.lo);
      if (approximate) out += " (~" + approx6(value.lo) + ")";
      return out;
    case DensityValueKind::Estimate:
      out = "estimate [" + rat_str(value.lo) + ", " + rat_str(value.hi) + "]";
      if (approximate) out += " (~" + approx6(value.hi) + ")";
      return out;
  }
  return out;
}

}  // namespace densitylab
