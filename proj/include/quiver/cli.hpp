#pragma once

// Subcommand dispatch behind the quiver command-line tool. run() is pure in
// its configuration: all randomness comes from RunConfig::seed through
// std::mt19937_64, so equal configurations give byte-identical reports.

#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "quiver/algebra.hpp"
#include "quiver/correspondence.hpp"
#include "quiver/error.hpp"
#include "quiver/fock.hpp"
#include "quiver/io.hpp"
#include "quiver/poly_text.hpp"
#include "quiver/quiver.hpp"
#include "quiver/recovery.hpp"
#include "quiver/reps.hpp"

namespace quiver::cli {

enum class Command { verify, norms, recover, iso, paths };

enum ExitCode : int {
  exit_ok = 0,
  exit_validation = 1,
  exit_numerical = 2,
  exit_mismatch = 3,
};

struct RunConfig {
  Command command = Command::verify;
  std::vector<std::string> graphs;  // iso takes two, the rest one
  std::size_t depth = 4;
  std::uint64_t seed = 0;
  std::size_t max_len = 3;
  double covariance_tolerance = 1e-12;
  double norm_tolerance = 1e-9;
  double closed_direct_tolerance = 1e-10;
  std::vector<std::string> polynomials;  // verify --poly

  // norms; vertices are 1-based, vectors are JSON lists
  std::size_t i = 1;
  std::size_t j = 2;
  std::string lambda_i = "[]";
  std::string lambda_j = "[]";
  std::string gamma = "[]";
  unsigned k_max = 6;

  std::string expect;  // recover --expect
};

struct RunResult {
  int exit_code = exit_ok;
  json report;
  std::string summary;  // one line for standard error
};

namespace detail {

inline json one_based(const Permutation& tau) {
  json out = json::array();
  for (std::size_t v : tau) out.push_back(v + 1);
  return out;
}

inline const std::string& single_graph(const RunConfig& c) {
  if (c.graphs.size() != 1) throw precondition_error("expected exactly one graph file");
  return c.graphs.front();
}

template <class Rng>
CorrespondenceElement random_element(const Quiver& q, Rng& rng) {
  std::normal_distribution<double> normal;
  CorrespondenceElement xi(q);
  for (const Arrow& a : arrows(q))
    xi.block(a.target, a.source)(static_cast<Eigen::Index>(a.index)) =
        complex(normal(rng), normal(rng));
  return xi;
}

inline RunResult run_verify(const RunConfig& c) {
  if (c.depth < 1) throw precondition_error("verify needs depth >= 1");
  const Quiver q = parse_quiver_file(single_graph(c));
  const FockSpace F(q, c.depth);
  std::mt19937_64 rng(c.seed);

  std::vector<CorrespondenceElement> samples;
  for (int k = 0; k < 3; ++k) samples.push_back(random_element(q, rng));
  const auto basis = arrows(q);

  double deviation = 0.0;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k)
    deviation = std::max(deviation, check_isometric_covariance(F, samples[k], samples[k + 1]));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const auto ea = CorrespondenceElement::basis(q, basis[a]);
    deviation = std::max(deviation, check_isometric_covariance(F, ea, ea));
    if (a + 1 < basis.size())
      deviation = std::max(deviation, check_isometric_covariance(
                                          F, ea, CorrespondenceElement::basis(q, basis[a + 1])));
  }

  bool corner_ok = true;
  json corners = json::array();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (q.count(v, v) == 0) continue;
    const auto r = check_corner_shifts(F, v);
    corner_ok = corner_ok && r.ok();
    corners.push_back({{"vertex", v + 1},
                       {"loops", r.loops},
                       {"isometry_deviation", r.isometry_deviation},
                       {"projection_deviation", r.projection_deviation},
                       {"deficient", r.deficient}});
  }

  bool norms_ok = true;
  json norm_checks = json::array();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double expected = element_norm(samples[k]);
    const double actual = operator_norm(creation_operator(F, samples[k]));
    const bool ok = std::abs(expected - actual) <= c.norm_tolerance * std::max(1.0, expected);
    norms_ok = norms_ok && ok;
    norm_checks.push_back({{"kind", "creation"},
                           {"sample", k},
                           {"element_norm", expected},
                           {"operator_norm", actual},
                           {"ok", ok}});
  }
  for (const auto& text : c.polynomials) {
    const auto p = parse_polynomial(q, text);
    norm_checks.push_back({{"kind", "polynomial"},
                           {"polynomial", to_string(p)},
                           {"operator_norm", operator_norm(evaluate_polynomial(F, p))}});
  }

  RunResult out;
  out.report = {{"depth", c.depth},
                {"dim", F.dimension()},
                {"max_covariance_deviation", deviation},
                {"corner_isometry_ok", corner_ok},
                {"corners", corners},
                {"norm_checks", norm_checks},
                {"samples", json::array({to_json(samples[0]), to_json(samples[1])})}};
  const bool ok = deviation <= c.covariance_tolerance && corner_ok && norms_ok;
  out.exit_code = ok ? exit_ok : exit_numerical;
  char dev[32];
  std::snprintf(dev, sizeof dev, "%.3g", deviation);
  out.summary = "verify: dim " + std::to_string(F.dimension()) + ", covariance deviation " +
                dev + (ok ? ", ok" : ", FAILED");
  return out;
}

inline RunResult run_norms(const RunConfig& c) {
  const Quiver q = parse_quiver_file(single_graph(c));
  if (c.i < 1 || c.j < 1 || c.i > q.vertex_count() || c.j > q.vertex_count())
    throw precondition_error("vertex out of range");
  RepParameters r{q,
                  c.i - 1,
                  c.j - 1,
                  complex_vector_from_json(json::parse(c.lambda_i)),
                  complex_vector_from_json(json::parse(c.lambda_j)),
                  complex_vector_from_json(json::parse(c.gamma))};
  if (!r.shapes_match()) throw shape_error("parameter dimensions do not match the quiver");
  if (r.i == r.j) throw precondition_error("vertices must differ");
  if (c.k_max < 1) throw precondition_error("k-max must be positive");

  const bool pure = r.q1() < 1.0 && r.q2() < 1.0;
  bool ok = true;
  json table = json::array();
  for (unsigned k = 1; k <= c.k_max; ++k) {
    const double closed = t_tilde_k_norm_closed(r, k);
    json row = {{"k", k}, {"closed", closed}, {"direct", nullptr}, {"bound", nullptr}};
    if (k <= default_direct_power_cap) {
      const double direct = t_tilde_k_norm_direct(r, k);
      row["direct"] = direct;
      ok = ok && std::abs(closed - direct) <= c.closed_direct_tolerance;
      if (pure) ok = ok && direct * direct <= purity_bound(r, k) + boundary_tolerance;
    }
    if (pure) row["bound"] = purity_bound(r, k);
    table.push_back(row);
  }
  const matrix2 prod = t_tilde_product(r);
  RunResult out;
  out.report = {{"i", c.i},
                {"j", c.j},
                {"q1", r.q1()},
                {"q2", r.q2()},
                {"t", r.t()},
                {"contractive", membership_G(r)},
                {"pure", pure},
                {"t_tilde_product_diag", {prod(0, 0).real(), prod(1, 1).real()}},
                {"table", table}};
  out.exit_code = ok ? exit_ok : exit_numerical;
  out.summary = std::string("norms: ") + std::to_string(c.k_max) + " rows" +
                (ok ? ", closed form and direct construction agree" : ", MISMATCH");
  return out;
}

inline RunResult run_recover(const RunConfig& c) {
  const Quiver q = parse_quiver_file(single_graph(c));
  const auto s = scramble(q, c.seed);
  const auto rep = recover(s);
  json evidence = json::array();
  for (const auto& e : rep.evidence)
    evidence.push_back({{"a", e.a + 1}, {"b", e.b + 1}, {"span_rank", e.span_rank},
                        {"rep_rank", e.rep_rank}});
  RunResult out;
  out.report = {{"n_recovered", rep.n_recovered},
                {"C_recovered", matrix_json(rep.recovered)},
                {"seed", c.seed},
                {"witness", rep.witness ? one_based(*rep.witness) : json(nullptr)},
                {"evidence", evidence}};
  bool ok = rep.witness.has_value();
  if (!c.expect.empty()) {
    const auto w = are_isomorphic(rep.recovered, parse_quiver_file(c.expect));
    out.report["expect_witness"] = w ? one_based(*w) : json(nullptr);
    ok = ok && w.has_value();
  }
  out.exit_code = ok ? exit_ok : exit_mismatch;
  out.summary = std::string("recover: ") + (ok ? "recovered quiver matches" : "MISMATCH");
  return out;
}

inline RunResult run_iso(const RunConfig& c) {
  if (c.graphs.size() != 2) throw precondition_error("iso needs two graph files");
  const auto w = are_isomorphic(parse_quiver_file(c.graphs[0]), parse_quiver_file(c.graphs[1]));
  RunResult out;
  if (w) {
    out.report = {{"isomorphic", true}, {"permutation", one_based(*w)}};
    out.summary = "isomorphic";
  } else {
    out.report = {{"isomorphic", false}};
    out.exit_code = exit_mismatch;
    out.summary = "not isomorphic";
  }
  return out;
}

inline RunResult run_paths(const RunConfig& c) {
  const Quiver q = parse_quiver_file(single_graph(c));
  const auto paths = enumerate_paths(q, c.max_len);
  json list = json::array();
  for (const auto& p : paths) list.push_back(to_string(p));
  RunResult out;
  out.report = {{"max_len", c.max_len}, {"count", paths.size()}, {"paths", list}};
  out.summary = "paths: " + std::to_string(paths.size());
  return out;
}

}  // namespace detail

inline RunResult run(const RunConfig& c) {
  try {
    switch (c.command) {
      case Command::verify: return detail::run_verify(c);
      case Command::norms: return detail::run_norms(c);
      case Command::recover: return detail::run_recover(c);
      case Command::iso: return detail::run_iso(c);
      case Command::paths: return detail::run_paths(c);
    }
  } catch (const json::exception& e) {
    return {exit_validation, {{"error", e.what()}}, std::string("error: ") + e.what()};
  } catch (const consistency_error& e) {
    return {exit_numerical, {{"error", e.what()}}, std::string("error: ") + e.what()};
  } catch (const error& e) {
    return {exit_validation, {{"error", e.what()}}, std::string("error: ") + e.what()};
  }
  return {exit_validation, {{"error", "unknown command"}}, "error: unknown command"};
}

}  // namespace quiver::cli
