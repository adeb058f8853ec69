#include "berg/report.hpp"

#include <zlib.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace berg {

using nlohmann::json;

namespace {

std::string kind_name(TestFunction::Kind k) {
    using K = TestFunction::Kind;
    switch (k) {
        case K::PowerShift: return "power_shift";
        case K::PurePower: return "pure_power";
        case K::BallPole: return "ball_pole";
        case K::Constant: return "constant";
        case K::Zero: return "zero";
        case K::Monomial: return "monomial";
    }
    return "zero";
}

TestFunction::Kind kind_from_name(const std::string& s) {
    using K = TestFunction::Kind;
    if (s == "power_shift") return K::PowerShift;
    if (s == "pure_power") return K::PurePower;
    if (s == "ball_pole") return K::BallPole;
    if (s == "constant") return K::Constant;
    if (s == "zero") return K::Zero;
    if (s == "monomial") return K::Monomial;
    throw std::invalid_argument("unknown function kind: " + s);
}

// Canonical parameter key per kind (a / t / s / c); monomial and zero have
// no scalar parameter.
const char* param_key(TestFunction::Kind k) {
    using K = TestFunction::Kind;
    switch (k) {
        case K::PowerShift: return "a";
        case K::PurePower: return "t";
        case K::BallPole: return "s";
        case K::Constant: return "c";
        default: return nullptr;
    }
}

json fn_to_json(const TestFunction& f) {
    json j;
    j["kind"] = kind_name(f.kind);
    j["domain"] = f.domain == FnDomain::Ball ? "ball" : "halfplane";
    j["n"] = f.n;
    if (const char* key = param_key(f.kind)) j[key] = f.param;
    if (f.kind == TestFunction::Kind::Monomial) {
        j["k1"] = f.degree[0];
        j["k2"] = f.degree[1];
    }
    j["scale"] = f.scale;
    return j;
}

TestFunction fn_from_json(const json& j) {
    TestFunction f;
    f.kind = kind_from_name(j.at("kind").get<std::string>());
    f.domain = j.value("domain", std::string("halfplane")) == "ball"
                   ? FnDomain::Ball
                   : FnDomain::HalfPlane;
    f.n = j.value("n", 1);
    if (const char* key = param_key(f.kind)) f.param = j.at(key).get<double>();
    if (f.kind == TestFunction::Kind::Monomial) {
        f.degree[0] = j.value("k1", 0);
        f.degree[1] = j.value("k2", 0);
    }
    f.scale = j.value("scale", 1.0);
    return f;
}

json config_to_json_obj(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["domain"] = c.domain;
    j["n"] = c.n;
    j["function"] = fn_to_json(c.f);
    j["params"] = {{"q", c.q}, {"nu", c.nu}, {"beta", c.beta},
                   {"s", c.s}, {"t", c.t},   {"p", c.p},
                   {"alpha", c.alpha}};
    j["eps"] = c.eps;
    j["ladder"] = {{"base", c.ladder.base},
                   {"min_exp", c.ladder.min_exp},
                   {"max_exp", c.ladder.max_exp}};
    j["quad"] = {{"tol", c.quad_opt.tol},
                 {"max_cells", c.quad_opt.max_cells},
                 {"rho", c.classify.rho},
                 {"div_ratio", c.classify.div_ratio},
                 {"tol_tail", c.classify.tol_tail}};
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["viewport"] = {{"x0", c.view_x0}, {"x1", c.view_x1},
                     {"y0", c.view_y0}, {"y1", c.view_y1},
                     {"res_x", c.res_x}, {"res_y", c.res_y}};
    return j;
}

}  // namespace

std::string config_to_json(const RunConfig& cfg) {
    return config_to_json_obj(cfg).dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunConfig c;
    c.command = j.value("command", c.command);
    c.domain = j.value("domain", c.domain);
    c.n = j.value("n", c.n);
    if (j.contains("function")) c.f = fn_from_json(j.at("function"));
    if (j.contains("params")) {
        const json& p = j.at("params");
        c.q = p.value("q", c.q);
        c.nu = p.value("nu", c.nu);
        c.beta = p.value("beta", c.beta);
        c.s = p.value("s", c.s);
        c.t = p.value("t", c.t);
        c.p = p.value("p", c.p);
        c.alpha = p.value("alpha", c.alpha);
    }
    c.eps = j.value("eps", c.eps);
    if (j.contains("ladder")) {
        const json& l = j.at("ladder");
        c.ladder.base = l.value("base", c.ladder.base);
        c.ladder.min_exp = l.value("min_exp", c.ladder.min_exp);
        c.ladder.max_exp = l.value("max_exp", c.ladder.max_exp);
    }
    if (j.contains("quad")) {
        const json& q = j.at("quad");
        c.quad_opt.tol = q.value("tol", c.quad_opt.tol);
        c.quad_opt.max_cells = q.value("max_cells", c.quad_opt.max_cells);
        c.classify.rho = q.value("rho", c.classify.rho);
        c.classify.div_ratio = q.value("div_ratio", c.classify.div_ratio);
        c.classify.tol_tail = q.value("tol_tail", c.classify.tol_tail);
    }
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    if (j.contains("viewport")) {
        const json& v = j.at("viewport");
        c.view_x0 = v.value("x0", c.view_x0);
        c.view_x1 = v.value("x1", c.view_x1);
        c.view_y0 = v.value("y0", c.view_y0);
        c.view_y1 = v.value("y1", c.view_y1);
        c.res_x = v.value("res_x", c.res_x);
        c.res_y = v.value("res_y", c.res_y);
    }
    return c;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash_hex(const RunConfig& cfg) {
    // threads is excluded from the hash: it may never influence results,
    // and artifacts produced with different thread counts must be
    // byte-identical.
    RunConfig canon = cfg;
    canon.threads = 1;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config_to_json(canon))));
    return buf;
}

std::string ladder_artifact_csv(const quad::LadderReport& rep,
                                const RunConfig& cfg, int first_m) {
    std::string out = "# config " + config_hash_hex(cfg) + " seed " +
                      std::to_string(cfg.seed) + "\n";
    out += rep.to_csv(first_m);
    return out;
}

namespace {

json probe_to_json(const Probe& p, const std::string& csv_ref) {
    return json{{"eps", p.eps},
                {"verdict", quad::to_string(p.effective)},
                {"raw_verdict", quad::to_string(p.raw)},
                {"ladder_csv_ref", csv_ref}};
}

}  // namespace

std::string distance_artifact_json(const DistanceEstimate& est,
                                   const RunConfig& cfg,
                                   const std::vector<std::string>& csv_refs) {
    json j;
    j["eps_lo"] = est.eps_lo;
    j["eps_hi"] = est.eps_hi;
    j["norm_inf"] = est.sup_norm;
    j["policy"] = est.policy;
    if (est.domain == "ball") {
        j["domain"] = "ball";
        j["n"] = est.n;
    }
    json probes = json::array();
    for (size_t i = 0; i < est.probes.size(); ++i)
        probes.push_back(probe_to_json(
            est.probes[i], i < csv_refs.size() ? csv_refs[i] : std::string()));
    j["probes"] = probes;
    j["config"] = config_hash_hex(cfg);
    j["seed"] = cfg.seed;
    return j.dump(2) + "\n";
}

std::string decomposition_artifact_json(
    const std::vector<DecompositionReport>& reports, const RunConfig& cfg) {
    json arr = json::array();
    for (const DecompositionReport& r : reports) {
        arr.push_back({{"eps", r.eps},
                       {"f1_sup_weighted", r.f1_sup_weighted},
                       {"f1_ratio", r.f1_ratio},
                       {"f2_norm_verdict", quad::to_string(r.f2_norm_verdict)},
                       {"f2_norm", r.f2_norm},
                       {"max_residual", r.max_residual}});
    }
    json j;
    j["reports"] = arr;
    j["config"] = config_hash_hex(cfg);
    j["seed"] = cfg.seed;
    return j.dump(2) + "\n";
}

namespace {

bool pixel_member(const TestFunction& f, double weight_pow, double eps,
                  cplx z) {
    if (f.domain == FnDomain::HalfPlane)
        return levelset_member(f, eps, weight_pow, z);
    return omega_member(f, eps, weight_pow, z);
}

double pixel_value(const TestFunction& f, double weight_pow, cplx z) {
    const double w = f.domain == FnDomain::HalfPlane
                         ? std::pow(z.imag(), weight_pow)
                         : std::pow(1.0 - std::norm(z), weight_pow);
    return std::abs(f.eval_unchecked(z)) * w;
}

void check_viewport(const TestFunction& f, double x0, double x1, double y0,
                    double y1) {
    if (!(x0 < x1) || !(y0 < y1))
        throw OutOfDomain("empty heatmap viewport");
    if (f.domain == FnDomain::HalfPlane) {
        if (!(y0 > 0.0))
            throw OutOfDomain("half-plane viewport must have y0 > 0");
    } else {
        const double rx = std::max(std::abs(x0), std::abs(x1));
        const double ry = std::max(std::abs(y0), std::abs(y1));
        if (!(rx * rx + ry * ry < 1.0))
            throw OutOfDomain("ball viewport must lie inside the open disk");
    }
}

}  // namespace

Image8 render_heatmap(const TestFunction& f, double weight_pow, double eps,
                      double x0, double x1, double y0, double y1, int res_x,
                      int res_y) {
    check_viewport(f, x0, x1, y0, y1);
    if (res_x < 1 || res_y < 1) throw OutOfDomain("heatmap needs >= 1 pixel");
    Image8 img;
    img.w = res_x;
    img.h = res_y;
    img.px.resize(size_t(res_x) * res_y);
    for (int iy = 0; iy < res_y; ++iy) {
        // Row 0 at the top of the viewport.
        const double y = y1 - (iy + 0.5) * (y1 - y0) / res_y;
        for (int ix = 0; ix < res_x; ++ix) {
            const double x = x0 + (ix + 0.5) * (x1 - x0) / res_x;
            const cplx z{x, y};
            std::uint8_t v;
            if (pixel_member(f, weight_pow, eps, z)) {
                v = 255;
            } else {
                const double val = std::min(1.0, pixel_value(f, weight_pow, z));
                v = std::uint8_t(std::lround(184.0 * val));
            }
            img.px[size_t(iy) * res_x + ix] = v;
        }
    }
    return img;
}

std::string heatmap_members_csv(const TestFunction& f, double weight_pow,
                                double eps, double x0, double x1, double y0,
                                double y1, int res_x, int res_y,
                                const RunConfig& cfg) {
    check_viewport(f, x0, x1, y0, y1);
    std::string out = "# config " + config_hash_hex(cfg) + " seed " +
                      std::to_string(cfg.seed) + "\nx,y\n";
    char buf[80];
    for (int iy = 0; iy < res_y; ++iy) {
        const double y = y1 - (iy + 0.5) * (y1 - y0) / res_y;
        for (int ix = 0; ix < res_x; ++ix) {
            const double x = x0 + (ix + 0.5) * (x1 - x0) / res_x;
            if (pixel_member(f, weight_pow, eps, {x, y})) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, y);
                out += buf;
            }
        }
    }
    return out;
}

namespace {

void put_u32(std::string& s, std::uint32_t v) {
    s.push_back(char((v >> 24) & 0xff));
    s.push_back(char((v >> 16) & 0xff));
    s.push_back(char((v >> 8) & 0xff));
    s.push_back(char(v & 0xff));
}

void put_chunk(std::string& out, const char type[4], const std::string& data) {
    put_u32(out, std::uint32_t(data.size()));
    std::string block(type, 4);
    block += data;
    out += block;
    const auto crc =
        crc32(0, reinterpret_cast<const Bytef*>(block.data()), uInt(block.size()));
    put_u32(out, std::uint32_t(crc));
}

}  // namespace

std::string encode_png_gray(const Image8& img) {
    // Raw scanlines, filter byte 0 per row.
    std::string raw;
    raw.reserve(size_t(img.h) * (img.w + 1));
    for (int y = 0; y < img.h; ++y) {
        raw.push_back('\0');
        raw.append(reinterpret_cast<const char*>(&img.px[size_t(y) * img.w]),
                   img.w);
    }
    uLongf zlen = compressBound(uLong(raw.size()));
    std::string zdata(zlen, '\0');
    if (compress2(reinterpret_cast<Bytef*>(zdata.data()), &zlen,
                  reinterpret_cast<const Bytef*>(raw.data()), uLong(raw.size()),
                  9) != Z_OK)
        throw std::runtime_error("png: zlib compression failed");
    zdata.resize(zlen);

    std::string out("\x89PNG\r\n\x1a\n", 8);
    std::string ihdr;
    put_u32(ihdr, std::uint32_t(img.w));
    put_u32(ihdr, std::uint32_t(img.h));
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(0);   // grayscale
    ihdr.push_back(0);   // deflate
    ihdr.push_back(0);   // filter method
    ihdr.push_back(0);   // no interlace
    put_chunk(out, "IHDR", ihdr);
    put_chunk(out, "IDAT", zdata);
    put_chunk(out, "IEND", "");
    return out;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.write(bytes.data(), std::streamsize(bytes.size()));
}

}  // namespace berg
