#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "coxcert/geometry.hpp"
#include "coxcert/pipeline.hpp"

namespace coxcert {

struct VizData {
  SphereConfiguration config;
  std::vector<std::string> labels;
  std::vector<bool> dashed;  // translated copies are drawn dashed
};

// Chart data for a bundle: the stored normals stereographically projected
// from the translation's tangency point (or, without a translation, from the
// tangency point of the pair (1,3)).
inline VizData viz_data(const CertificateBundle& b) {
  QuadraticForm q(b.form);
  if (q.signature().negative != 1 || q.signature().zero != 0)
    throw CertificateFailure("viz: form signature is " + q.signature().to_string() +
                             ", chart needs (n,1,0)");
  std::vector<Vec> normals;
  VizData out;
  Vec basepoint;
  if (b.variant == "polygon-2n" || b.variant == "polygon-2n-2") {
    if (!b.translation) throw CertificateFailure("viz: polygon bundle lacks translation data");
    const std::size_t m = b.variant == "polygon-2n" ? b.n + 1 : b.n;
    basepoint = b.translation->p;
    for (std::size_t a = 1; a <= m; ++a) {
      normals.push_back(basis_vec(q.dim(), a - 1));
      out.labels.push_back("S" + std::to_string(a));
      out.dashed.push_back(false);
    }
    for (std::size_t s = 1; s + 1 < m; ++s) {
      normals.push_back(b.translation->matrix * basis_vec(q.dim(), m - s - 1));
      out.labels.push_back("tS" + std::to_string(m - s));
      out.dashed.push_back(true);
    }
  } else {
    basepoint = tangency_point(q, 1, 3);
    for (std::size_t a = 1; a <= q.dim(); ++a) {
      normals.push_back(basis_vec(q.dim(), a - 1));
      out.labels.push_back("S" + std::to_string(a));
      out.dashed.push_back(false);
    }
  }
  out.config = spheres_from_normals(normals, q, basepoint);
  return out;
}

namespace detail {

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x == 0 ? 0.0 : x);  // avoid "-0.000000"
  return buf;
}

}  // namespace detail

// Residual table: one line per unordered pair, float product vs |exact Gram|.
inline std::string residual_table(const VizData& v) {
  std::string t = "pair  product  |gram-residual|\n";
  for (std::size_t a = 0; a < v.config.items.size(); ++a)
    for (std::size_t b = a + 1; b < v.config.items.size(); ++b)
      t += v.labels[a] + "," + v.labels[b] + "  " + detail::fmt(v.config.products[a][b]) + "  " +
           detail::fmt(v.config.residuals[a][b]) + "\n";
  return t;
}

// SVG 1.1 rendering of a plane chart (ambient dimension 2): hyperplanes as
// clipped lines, spheres as circles, translated walls dashed.
inline std::string render_svg(const VizData& v) {
  if (v.config.ambient_dim != 2)
    throw CertificateFailure("svg output needs ambient dimension 2 (n = 3)");
  double lo_x = -1, hi_x = 1, lo_y = -1, hi_y = 1;
  for (const auto& item : v.config.items) {
    if (item.is_plane) continue;
    lo_x = std::min(lo_x, item.coeffs[0] - item.offset_or_radius);
    hi_x = std::max(hi_x, item.coeffs[0] + item.offset_or_radius);
    lo_y = std::min(lo_y, item.coeffs[1] - item.offset_or_radius);
    hi_y = std::max(hi_y, item.coeffs[1] + item.offset_or_radius);
  }
  lo_x -= 1; lo_y -= 1; hi_x += 1; hi_y += 1;
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double scale = 640.0 / span;

  auto sx = [&](double x) { return (x - lo_x) * scale; };
  auto sy = [&](double y) { return (hi_y - y) * scale; };  // flip y for SVG

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         detail::fmt((hi_x - lo_x) * scale) + "\" height=\"" + detail::fmt((hi_y - lo_y) * scale) +
         "\">\n";
  svg += "<desc>\n" + residual_table(v) + "</desc>\n";
  for (std::size_t i = 0; i < v.config.items.size(); ++i) {
    const auto& item = v.config.items[i];
    const std::string dash = v.dashed[i] ? " stroke-dasharray=\"8,6\"" : "";
    if (item.is_plane) {
      // {x : n.x = d}, clipped to the viewport along the direction
      // perpendicular to the normal.
      const double nx = item.coeffs[0], ny = item.coeffs[1], d = item.offset_or_radius;
      const double px = nx * d, py = ny * d;
      const double len = 2 * span;
      const double x1 = px - ny * len, y1 = py + nx * len;
      const double x2 = px + ny * len, y2 = py - nx * len;
      svg += "<line x1=\"" + detail::fmt(sx(x1)) + "\" y1=\"" + detail::fmt(sy(y1)) + "\" x2=\"" +
             detail::fmt(sx(x2)) + "\" y2=\"" + detail::fmt(sy(y2)) +
             "\" stroke=\"black\" stroke-width=\"2\"" + dash + "/>\n";
    } else {
      svg += "<circle cx=\"" + detail::fmt(sx(item.coeffs[0])) + "\" cy=\"" +
             detail::fmt(sy(item.coeffs[1])) + "\" r=\"" +
             detail::fmt(item.offset_or_radius * scale) +
             "\" stroke=\"black\" stroke-width=\"2\" fill=\"none\"" + dash + "/>\n";
    }
    const double lx = item.is_plane ? item.coeffs[0] * item.offset_or_radius : item.coeffs[0];
    const double ly = item.is_plane ? item.coeffs[1] * item.offset_or_radius + 0.1
                                    : item.coeffs[1];
    svg += "<text x=\"" + detail::fmt(sx(lx) + 4) + "\" y=\"" + detail::fmt(sy(ly) - 4) +
           "\" font-family=\"sans-serif\" font-size=\"14\">" + v.labels[i] + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

inline std::string render_viz_json(const VizData& v) {
  using Json = nlohmann::ordered_json;
  Json j;
  j["ambient_dim"] = v.config.ambient_dim;
  Json items = Json::array();
  for (std::size_t i = 0; i < v.config.items.size(); ++i) {
    const auto& item = v.config.items[i];
    Json e;
    e["label"] = v.labels[i];
    e["type"] = item.is_plane ? "hyperplane" : "sphere";
    e[item.is_plane ? "unit_normal" : "center"] = item.coeffs;
    e[item.is_plane ? "offset" : "radius"] = item.offset_or_radius;
    e["translated_copy"] = static_cast<bool>(v.dashed[i]);
    items.push_back(std::move(e));
  }
  j["items"] = std::move(items);
  j["inversive_products"] = v.config.products;
  j["residuals_vs_exact_gram"] = v.config.residuals;
  j["max_residual"] = v.config.max_residual;
  return j.dump(2) + "\n";
}

}  // namespace coxcert
