#include "lazy_spectra/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/io.hpp"

namespace lazy_spectra::report {

namespace {

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Inline array of columns, or a sidecar path when the columns are long.
void put_columns(Json& doc, const std::string& key, const DenseMatrix& cols, const ExportOptions& opt,
                 const std::string& suffix) {
  if (cols.rows() > kInlineVectorLimit && !opt.output_path.empty()) {
    const std::string path = opt.output_path + "." + suffix + ".bin";
    save_dense_binary(cols, path);
    doc[key] = Json::array();
    doc[key + "_path"] = path;
    return;
  }
  Json arr = Json::array();
  for (Index j = 0; j < cols.cols(); ++j) arr.push_back(vector_json(cols.col(j)));
  doc[key] = std::move(arr);
  doc[key + "_path"] = nullptr;
}

}  // namespace

Json schedule_json(const AppxPcaSchedule& s) {
  return Json{{"dim", s.dim},
              {"delta", s.delta},
              {"eps", s.eps},
              {"p", s.p},
              {"theta", s.theta},
              {"tolerance_mode", tolerance_mode_name(s.mode)},
              {"practical_floor", s.practical_floor},
              {"m1", s.m1},
              {"m2", s.m2},
              {"log_eps1_theory", s.log_eps1},
              {"log_eps2_theory", s.log_eps2},
              {"eps1", s.eps1()},
              {"eps2", s.eps2()},
              {"max_rounds", s.max_rounds}};
}

Json config_json(const SolverConfig& c, const AppxPcaSchedule& schedule) {
  Json j{{"k", c.k},
         {"mode", mode_name(c.mode)},
         {"gap", c.mode == SpectralMode::gap_dependent ? Json(c.gap) : Json(nullptr)},
         {"eps", c.eps},
         {"delta", c.effective_delta()},
         {"eps_pca", c.effective_eps_pca()},
         {"p", c.p},
         {"backend", backend_name(c.backend)},
         {"inner", c.inner == InnerBackend::nested ? "nested" : "stochastic"},
         {"warm_start", c.warm_start},
         {"seed", c.seed}};
  j["schedule"] = schedule_json(schedule);
  return j;
}

Json trace_json(const AppxPcaTrace& t) {
  Json rounds = Json::array();
  for (const auto& r : t.rounds) {
    rounds.push_back(Json{{"s", r.s},
                          {"lambda", r.lambda},
                          {"delta", r.delta},
                          {"side", sign_name(r.side)},
                          {"qa", r.qa},
                          {"qb", r.qb}});
  }
  return Json{{"lambda0", t.lambda0},
              {"final_lambda", t.final_lambda},
              {"rounds", std::move(rounds)},
              {"inner_solves", t.inner_solves},
              {"inner_matvecs", t.inner_matvecs},
              {"agd_iterations", t.agd_iterations},
              {"max_condition", t.max_condition},
              {"seed", t.seed}};
}

Json lemma_json(const oracle::LemmaReport& r) {
  Json lemmas = Json::array();
  for (const auto* s : {&r.projection, &r.wedin, &r.embedding}) {
    lemmas.push_back(Json{{"name", s->name},
                          {"instances", s->instances},
                          {"violations", s->violations},
                          {"max_ratio", s->max_ratio}});
  }
  return Json{{"seed", r.seed}, {"lemmas", std::move(lemmas)}, {"total_violations", r.total_violations()}};
}

Json genev_json(const SpectralResult& r, const ExportOptions& opt) {
  Json doc;
  doc["eigenvalues"] = r.rayleigh;
  Json signs = Json::array();
  for (Sign s : r.signs) signs.push_back(sign_name(s));
  doc["signs"] = std::move(signs);
  put_columns(doc, "vectors", r.basis.vectors(), opt, "vectors");
  doc["b_orthonormality_error"] = r.orthonormality_error();
  doc["residual_exhausted"] = r.residual_exhausted;
  doc["exhausted_reason"] = r.exhausted_reason;
  doc["inner_solves"] = r.inner_solves;
  doc["inner_matvecs"] = r.inner_matvecs;
  Json traces = Json::array();
  for (const auto& t : r.traces) traces.push_back(trace_json(t));
  doc["traces"] = std::move(traces);
  doc["seed"] = r.seed;
  doc["config"] = config_json(r.config, r.schedule);
  return envelope("genev", doc, opt.timestamp);
}

Json cca_json(const CcaResult& r, const ExportOptions& opt, std::optional<double> leakage) {
  Json doc;
  Json sig = Json::array();
  DenseMatrix phi, psi;
  if (!r.pairs.empty()) {
    phi.resize(r.pairs.front().phi.size(), static_cast<Index>(r.pairs.size()));
    psi.resize(r.pairs.front().psi.size(), static_cast<Index>(r.pairs.size()));
  }
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    sig.push_back(r.pairs[i].sigma);
    phi.col(static_cast<Index>(i)) = r.pairs[i].phi;
    psi.col(static_cast<Index>(i)) = r.pairs[i].psi;
  }
  doc["sigmas"] = std::move(sig);
  put_columns(doc, "phi", phi, opt, "phi");
  put_columns(doc, "psi", psi, opt, "psi");
  doc["leakage"] = leakage ? Json(*leakage) : Json(nullptr);
  doc["raw_rayleigh"] = r.raw_rayleigh;
  doc["rescaled_rayleigh"] = r.rescaled_rayleigh;
  doc["residual_exhausted"] = r.residual_exhausted;
  doc["exhausted_reason"] = r.exhausted_reason;
  doc["inner_solves"] = r.inner_solves;
  doc["inner_matvecs"] = r.inner_matvecs;
  Json traces = Json::array();
  for (const auto& t : r.traces) traces.push_back(trace_json(t));
  doc["traces"] = std::move(traces);
  doc["seed"] = r.seed;
  doc["config"] = config_json(r.config, r.schedule);
  return envelope("cca", doc, opt.timestamp);
}

Json envelope(const std::string& kind, const Json& body, bool timestamp) {
  Json doc{{"schema", kSchema}, {"kind", kind}};
  doc["timestamp"] = timestamp ? Json(utc_now()) : Json(nullptr);
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  return doc;
}

void write_json(const Json& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw InputError("failed writing output file: " + path);
}

Json strip_volatile(Json doc) {
  if (doc.is_object()) doc.erase("timestamp");
  return doc;
}

}  // namespace lazy_spectra::report
