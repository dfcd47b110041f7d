#pragma once

#include <iostream>
#include <string>

#include "coxcert/bundle_io.hpp"
#include "coxcert/pipeline.hpp"
#include "coxcert/viz.hpp"

namespace coxcert {

// Exit-code contract shared by every subcommand:
//   0 all certificates pass, 1 verification/certificate failure,
//   2 usage or format error, 3 resource limit (max power exhausted).
enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2, exit_limit = 3 };

inline void print_certificates(const CertificateBundle& b, std::ostream& out) {
  for (const auto& c : b.certificates)
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << ": " << c.evidence << "\n";
}

inline int run_build(std::size_t n, const std::string& variant, long max_power,
                     const std::string& out_path, std::ostream& out, std::ostream& err) {
  BuildResult result;
  try {
    if (variant == "polygon2n")
      result = build_2ngon(n, max_power);
    else if (variant == "polygon2n-2")
      result = build_2n_minus_2_gon(n, max_power);
    else if (variant == "even")
      result = build_even(n);
    else if (variant == "odd-project")
      result = build_odd_projected(n);
    else {
      err << "error: unknown variant '" << variant
          << "' (expected polygon2n, polygon2n-2, even, odd-project)\n";
      return exit_usage;
    }
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const CertificateFailure& e) {
    err << "error: construction failed: " << e.what() << "\n";
    return exit_failure;
  }

  const CertificateBundle& b = result.bundle;
  try {
    write_file_atomic(out_path, serialize_bundle(b));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  print_certificates(b, out);
  out << (b.all_pass() ? "all certificates pass" : "certificate failure") << "; bundle written to "
      << out_path << "\n";
  if (result.max_power_exhausted) {
    err << "error: no power k <= " << max_power << " makes the polygon certificate pass\n";
    return exit_limit;
  }
  return b.all_pass() ? exit_ok : exit_failure;
}

inline int run_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  CertificateBundle b;
  try {
    b = parse_bundle(read_file(path));
  } catch (const BundleFormatError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  VerifyReport rep = verify_bundle(b);
  for (const auto& c : rep.recomputed)
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << ": " << c.evidence << "\n";
  if (rep.ok) {
    out << "verification OK: all certificates pass and stored statuses match\n";
    return exit_ok;
  }
  out << "verification FAILED: " << (rep.detail.empty() ? "status mismatch" : rep.detail) << "\n";
  return exit_failure;
}

inline int run_viz(const std::string& path, const std::string& out_path, std::string format,
                   std::ostream& out, std::ostream& err) {
  CertificateBundle b;
  try {
    b = parse_bundle(read_file(path));
  } catch (const BundleFormatError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  if (!b.all_pass()) {
    err << "error: bundle has failing certificates; not drawing an uncertified configuration\n";
    return exit_failure;
  }
  VizData v;
  try {
    v = viz_data(b);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  }
  if (format == "auto") format = v.config.ambient_dim == 2 ? "svg" : "json";
  std::string rendered;
  if (format == "svg") {
    try {
      rendered = render_svg(v);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }
  } else if (format == "json") {
    rendered = render_viz_json(v);
  } else {
    err << "error: unknown format '" << format << "' (expected svg or json)\n";
    return exit_usage;
  }
  if (out_path.empty()) {
    out << rendered;
  } else {
    try {
      write_file_atomic(out_path, rendered);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }
    out << "wrote " << format << " to " << out_path << "\n";
  }
  return exit_ok;
}

}  // namespace coxcert
