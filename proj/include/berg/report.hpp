#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "berg/ball_distance.hpp"
#include "berg/catalog.hpp"
#include "berg/distance.hpp"
#include "berg/hp_distance.hpp"
#include "berg/params.hpp"
#include "berg/quad.hpp"

namespace berg {

// One configuration drives one CLI command. JSON round-trips losslessly;
// numeric fields are emitted with full precision.
struct RunConfig {
    std::string command = "norm";
    std::string domain = "halfplane";  // halfplane | ball
    int n = 1;
    TestFunction f = power_shift(2.0);

    // Distance-theorem parameters (halfplane: q, nu, beta; ball: q, s, t).
    double q = 2.0, nu = 0.0, beta = 1.0;
    double s = 1.0, t = 2.0;
    // Plain-norm parameters.
    double p = 2.0, alpha = 0.0;

    double eps = 0.5;  // phi/psi/levelset/decompose payload

    quad::Ladder ladder;
    quad::Options quad_opt{.tol = 1e-5};
    quad::ClassifyOptions classify;

    std::uint64_t seed = 20240901;
    int threads = 1;  // accepted for interface stability; affects speed only

    // levelset viewport (half-plane: x in [x0,x1], y in [y0,y1] with y0 > 0;
    // ball: the rectangle must sit inside the open disk).
    double view_x0 = -2.0, view_x1 = 2.0, view_y0 = 0.0625, view_y1 = 4.0;
    int res_x = 512, res_y = 256;
};

RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& cfg);

// FNV-1a over the canonical JSON serialization; embedded in artifacts so a
// result file names the configuration that produced it.
std::uint64_t fnv1a64(const std::string& bytes);
std::string config_hash_hex(const RunConfig& cfg);

// Artifact emitters. Every artifact carries the config hash and seed.
std::string ladder_artifact_csv(const quad::LadderReport& rep,
                                const RunConfig& cfg, int first_m);
std::string distance_artifact_json(const DistanceEstimate& est,
                                   const RunConfig& cfg,
                                   const std::vector<std::string>& csv_refs);
std::string decomposition_artifact_json(
    const std::vector<DecompositionReport>& reports, const RunConfig& cfg);

// --- Heatmaps -------------------------------------------------------------

struct Image8 {
    int w = 0, h = 0;
    std::vector<std::uint8_t> px;  // row-major, top row first
};

// Grayscale of min(1, |f| * weight): background intensity 0..184, level-set
// members rendered at 255 (a band the background never reaches). Pixel (0,0)
// is the top-left corner (largest y resp. largest imaginary part).
Image8 render_heatmap(const TestFunction& f, double weight_pow, double eps,
                      double x0, double x1, double y0, double y1, int res_x,
                      int res_y);

// CSV listing of member pixel centers, columns x,y.
std::string heatmap_members_csv(const TestFunction& f, double weight_pow,
                                double eps, double x0, double x1, double y0,
                                double y1, int res_x, int res_y,
                                const RunConfig& cfg);

// Minimal PNG encoder (8-bit grayscale, no alpha) over zlib; byte-exact
// deterministic for fixed input.
std::string encode_png_gray(const Image8& img);

void write_file(const std::string& path, const std::string& bytes);

}  // namespace berg
