#pragma once

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coxcert/bundle_io.hpp"
#include "coxcert/cli.hpp"
#include "coxcert/forms.hpp"
#include "coxcert/pipeline.hpp"
#include "coxcert/prng.hpp"
#include "coxcert/viz.hpp"

namespace coxcert {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Hooks for the self-test harness. The signature function can be swapped for
// a deliberately broken one to prove the suite detects faults; `only`
// restricts the run to the listed criterion ids (empty = all).
struct AcceptanceContext {
  std::function<Signature(const Matrix&)> signature_fn = [](const Matrix& m) { return signature(m); };
  std::string scratch_dir;
  std::vector<std::string> only;
};

namespace detail {

inline std::string default_scratch_dir() {
  namespace fs = std::filesystem;
  return (fs::temp_directory_path() / ("coxcert-scratch-" + std::to_string(::getpid()))).string();
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

// Pointers to every decimal-string matrix/vector entry of a bundle document,
// in document order, for mutation testing.
inline std::vector<nlohmann::ordered_json*> bundle_entry_slots(nlohmann::ordered_json& j) {
  std::vector<nlohmann::ordered_json*> slots;
  auto add_matrix = [&](nlohmann::ordered_json& m) {
    for (auto& row : m)
      for (auto& cell : row) slots.push_back(&cell);
  };
  add_matrix(j["form"]["entries"]);
  for (auto& g : j["generators"]) add_matrix(g["matrix"]);
  if (!j["translation"].is_null()) {
    for (auto& cell : j["translation"]["p"]) slots.push_back(&cell);
    for (auto& cell : j["translation"]["v"]) slots.push_back(&cell);
    add_matrix(j["translation"]["matrix"]);
  }
  return slots;
}

template <typename F>
CriterionResult timed(const std::string& id, double budget_seconds, F&& body) {
  CriterionResult r;
  r.id = id;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto [pass, detail] = body();
    r.pass = pass;
    r.detail = detail;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("aborted: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && r.seconds > budget_seconds) {
    r.pass = false;
    r.detail += " [over time budget]";
  }
  return r;
}

}  // namespace detail

inline std::vector<CriterionResult> run_acceptance(const AcceptanceContext& ctx_in = {}) {
  namespace fs = std::filesystem;
  AcceptanceContext ctx = ctx_in;
  if (ctx.scratch_dir.empty()) ctx.scratch_dir = detail::default_scratch_dir();
  fs::create_directories(ctx.scratch_dir);
  auto scratch = [&](const std::string& name) { return (fs::path(ctx.scratch_dir) / name).string(); };
  auto wanted = [&](const std::string& id) {
    if (ctx.only.empty()) return true;
    for (const auto& w : ctx.only)
      if (w == id) return true;
    return false;
  };

  std::optional<BuildResult> b3_cache;
  auto bundle3 = [&]() -> const BuildResult& {
    if (!b3_cache) b3_cache = build_2ngon(3, 64);
    return *b3_cache;
  };

  std::vector<CriterionResult> results;

  if (wanted("criterion-1"))
  results.push_back(detail::timed("criterion-1", 5.0, [&]() -> std::pair<bool, std::string> {
    for (std::size_t n = 3; n <= 10; ++n) {
      Signature want{static_cast<int>(n), 1, 0};
      if (ctx.signature_fn(build_Q(n + 1).matrix()) != want)
        return {false, "Q_" + std::to_string(n + 1) + " signature mismatch"};
    }
    for (std::size_t n = 4; n <= 10; n += 2) {
      Signature want{static_cast<int>(n), 1, 0};
      if (ctx.signature_fn(build_Q_prime(n + 1).matrix()) != want)
        return {false, "Q'_" + std::to_string(n + 1) + " signature mismatch (even n)"};
    }
    for (std::size_t n = 5; n <= 9; n += 2) {
      Signature want{static_cast<int>(n) - 1, 1, 1};
      const Matrix qp = build_Q_prime(n + 1).matrix();
      if (ctx.signature_fn(qp) != want)
        return {false, "Q'_" + std::to_string(n + 1) + " signature mismatch (odd n)"};
      RankKernel rk = rank_and_kernel(qp);
      if (rk.kernel.size() != 1 || rk.kernel[0] != alt_signs_vec(n + 1))
        return {false, "Q'_" + std::to_string(n + 1) + " kernel is not the alternating-sign line"};
    }
    return {true, "signatures (n,1,0) / (n-1,1,1) and kernels verified exactly for n = 3..10"};
  }));

  if (wanted("criterion-2"))
  results.push_back(detail::timed("criterion-2", 0, [&]() -> std::pair<bool, std::string> {
    for (std::size_t n = 2; n <= 10; ++n) {
      const Int expected = -Int(n) * Int(n) + 2 * Int(n) + 1;
      if (all_ones_value(n) != expected)
        return {false, "all-ones value mismatch at n = " + std::to_string(n)};
    }
    return {true, "v^T Q_{n+1} v = -n^2+2n+1 exactly for n = 2..10 (positive at n = 2)"};
  }));

  if (wanted("criterion-3"))
  results.push_back(detail::timed("criterion-3", 60.0, [&]() -> std::pair<bool, std::string> {
    std::string powers;
    for (std::size_t n = 3; n <= 8; ++n) {
      const BuildResult r = n == 3 ? bundle3() : build_2ngon(n, 64);
      if (r.max_power_exhausted) return {false, "max power exhausted at n = " + std::to_string(n)};
      if (!r.bundle.all_pass()) {
        for (const auto& c : r.bundle.certificates)
          if (!c.pass) return {false, "n = " + std::to_string(n) + ": " + c.id + ": " + c.evidence};
      }
      powers += (n > 3 ? ", " : "") + std::string("k(") + std::to_string(n) +
                ")=" + std::to_string(r.bundle.translation->k);
    }
    return {true, "2n-gon bundles pass for n = 3..8; minimal powers " + powers};
  }));

  if (wanted("criterion-4"))
  results.push_back(detail::timed("criterion-4", 30.0, [&]() -> std::pair<bool, std::string> {
    std::string powers;
    for (std::size_t n = 4; n <= 6; ++n) {
      BuildResult r = build_2n_minus_2_gon(n, 64);
      if (r.max_power_exhausted || !r.bundle.all_pass())
        return {false, "2(n-1)-gon bundle fails at n = " + std::to_string(n)};
      powers += (n > 4 ? ", " : "") + std::string("k(") + std::to_string(n) +
                ")=" + std::to_string(r.bundle.translation->k);
    }
    return {true, "2(n-1)-gon bundles pass for n = 4..6; minimal powers " + powers};
  }));

  if (wanted("criterion-5"))
  results.push_back(detail::timed("criterion-5", 0, [&]() -> std::pair<bool, std::string> {
    for (std::size_t n : {std::size_t{4}, std::size_t{6}})
      if (!build_even(n).bundle.all_pass())
        return {false, "even-prime bundle fails at n = " + std::to_string(n)};
    for (std::size_t n : {std::size_t{5}, std::size_t{7}}) {
      const CertificateBundle b = build_odd_projected(n).bundle;
      if (!b.all_pass()) return {false, "odd-projected bundle fails at n = " + std::to_string(n)};
      const CertificateRecord* ident = b.find_certificate("projection-identity");
      const CertificateRecord* hom = b.find_certificate("projection-homomorphism");
      if (!ident || !ident->pass || !hom || !hom->pass)
        return {false, "projection certificates missing at n = " + std::to_string(n)};
    }
    return {true, "even-prime (n = 4, 6) and odd-projected (n = 5, 7) bundles pass, including "
                  "the exact projection identities and 100 sampled homomorphism pairs"};
  }));

  if (wanted("criterion-6"))
  results.push_back(detail::timed("criterion-6", 60.0, [&]() -> std::pair<bool, std::string> {
    CrosscheckReport rep = word_problem_crosscheck(bundle3().bundle, 6);
    if (!rep.pass) return {false, "mismatch: " + rep.first_mismatch};
    return {true, std::to_string(rep.words_checked) + " words checked, " +
                      std::to_string(rep.distinct_elements) + " distinct elements, " +
                      std::to_string(rep.trivial_words) + " trivial, zero mismatches"};
  }));

  if (wanted("criterion-7"))
  results.push_back(detail::timed("criterion-7", 0, [&]() -> std::pair<bool, std::string> {
    HnnReport rep = hnn_sample_check(bundle3().bundle, 4, 1000, 0x48e11u);
    if (!rep.pass)
      return {false, std::to_string(rep.identity_evaluations) +
                         " reduced words evaluated to the identity, first: " + rep.first_counterexample};
    return {true, "1000 Britton-reduced samples (syllable bound 4) all evaluate to nonidentity"};
  }));

  if (wanted("criterion-8"))
  results.push_back(detail::timed("criterion-8", 0, [&]() -> std::pair<bool, std::string> {
    const std::string bundle_path = scratch("bundle-n3.json");
    write_file_atomic(bundle_path, serialize_bundle(bundle3().bundle));
    const std::string svg_path = scratch("bundle-n3.svg");
    std::ostringstream out, err;
    if (run_viz(bundle_path, svg_path, "auto", out, err) != exit_ok)
      return {false, "viz command failed: " + err.str()};
    const std::string svg = read_file(svg_path);
    const std::size_t lines = detail::count_occurrences(svg, "<line ");
    const std::size_t circles = detail::count_occurrences(svg, "<circle ");
    if (lines != 2 || circles != 4)
      return {false, "expected 2 lines + 4 circles, got " + std::to_string(lines) + " + " +
                         std::to_string(circles)};
    VizData v = viz_data(bundle3().bundle);
    if (v.config.max_residual > 1e-9)
      return {false, "float products drift from |Gram| by " + std::to_string(v.config.max_residual)};
    const auto& items = v.config.items;
    if (!items[0].is_plane || !items[3].is_plane) return {false, "S1 and S4 did not project to lines"};
    double dot = items[0].coeffs[0] * items[3].coeffs[0] + items[0].coeffs[1] * items[3].coeffs[1];
    if (std::abs(std::abs(dot) - 1.0) > 1e-9) return {false, "S1 and S4 lines are not parallel"};
    if (std::abs(v.config.products[1][0]) > 1e-9) return {false, "S2 is not orthogonal to S1"};
    if (std::abs(std::abs(v.config.products[1][3]) - 1.0) > 1e-9)
      return {false, "S2 is not tangent to S4"};
    return {true, "2 parallel lines + 4 circles; products match |Gram| within 1e-9; "
                  "S2 orthogonal to S1 and tangent to S4"};
  }));

  if (wanted("criterion-9"))
  results.push_back(detail::timed("criterion-9", 0, [&]() -> std::pair<bool, std::string> {
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(serialize_bundle(bundle3().bundle));
    SplitMix64 rng(0x7a3b9u);
    for (int trial = 0; trial < 20; ++trial) {
      nlohmann::ordered_json mutated = doc;
      std::vector<nlohmann::ordered_json*> slots = detail::bundle_entry_slots(mutated);
      nlohmann::ordered_json* slot = slots[rng.below(slots.size())];
      const Int bumped = int_from_string(slot->get<std::string>()) + 1;
      *slot = int_to_string(bumped);
      const std::string path = scratch("mutated.json");
      write_file_atomic(path, mutated.dump(2) + "\n");
      std::ostringstream out, err;
      if (run_verify(path, out, err) != exit_failure)
        return {false, "mutation " + std::to_string(trial) + " was not detected"};
    }
    return {true, "all 20 random single-entry mutations flip verification to exit 1"};
  }));

  if (wanted("criterion-10"))
  results.push_back(detail::timed("criterion-10", 0, [&]() -> std::pair<bool, std::string> {
    for (std::size_t n : {std::size_t{3}, std::size_t{4}, std::size_t{5}}) {
      const std::string path = scratch("det.json");
      std::ostringstream out1, err1, out2, err2;
      if (run_build(n, "polygon2n", 64, path, out1, err1) != exit_ok)
        return {false, "build failed at n = " + std::to_string(n)};
      const std::string first = read_file(path);
      if (run_build(n, "polygon2n", 64, path, out2, err2) != exit_ok)
        return {false, "rebuild failed at n = " + std::to_string(n)};
      if (first != read_file(path) || out1.str() != out2.str())
        return {false, "repeated builds with identical flags differ at n = " + std::to_string(n)};
    }
    return {true, "independent builds with identical flags are byte-identical for n = 3, 4, 5"};
  }));

  std::error_code ec;
  fs::remove_all(ctx.scratch_dir, ec);
  return results;
}

// Prints one line per criterion (no timings, so repeated runs are
// byte-identical) and returns 0 iff everything passes.
inline int run_selftest(bool break_signature, std::ostream& out, std::ostream& err,
                        const std::vector<std::string>& only = {}) {
  AcceptanceContext ctx;
  ctx.only = only;
  if (break_signature)
    ctx.signature_fn = [](const Matrix& m) {
      Signature s = signature(m);
      std::swap(s.positive, s.negative);
      return s;
    };
  std::vector<CriterionResult> results = run_acceptance(ctx);
  std::size_t failures = 0;
  for (const auto& r : results) {
    out << r.id << "  " << (r.pass ? "PASS" : "FAIL") << "  " << r.detail << "\n";
    if (!r.pass) ++failures;
  }
  if (failures) {
    err << failures << " acceptance criteria failed\n";
    return exit_failure;
  }
  out << "all acceptance criteria pass\n";
  return exit_ok;
}

}  // namespace coxcert
