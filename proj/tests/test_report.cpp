#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <zlib.h>

#include <cmath>
#include <cstring>
#include <string>

#include "berg/report.hpp"

using namespace berg;

TEST_CASE("config JSON round-trip is the identity") {
    RunConfig cfg;
    cfg.command = "dist";
    cfg.domain = "ball";
    cfg.n = 2;
    cfg.f = ball_pole(0.75, 2, 3.0);
    cfg.q = 1.5;
    cfg.s = 2.25;
    cfg.t = 3.5;
    cfg.eps = 0.125;
    cfg.ladder.max_exp = 17;
    cfg.seed = 99;
    cfg.view_y0 = 0.25;
    cfg.res_x = 64;
    cfg.res_y = 32;

    const std::string j1 = config_to_json(cfg);
    const RunConfig back = config_from_json(j1);
    const std::string j2 = config_to_json(back);
    CHECK(j1 == j2);
    CHECK(back.f.kind == cfg.f.kind);
    CHECK(back.f.scale == 3.0);
    CHECK(back.seed == 99);
    CHECK(back.ladder.max_exp == 17);
}

TEST_CASE("FNV-1a vectors and hash properties") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);

    RunConfig a, b;
    b.threads = 8;
    // The thread count affects speed only, so it must not change the hash.
    CHECK(config_hash_hex(a) == config_hash_hex(b));
    b.eps = 0.75;
    CHECK(config_hash_hex(a) != config_hash_hex(b));
}

TEST_CASE("heatmap marks the sector level set") {
    // |z^{-1}| y = sin(theta): member iff the polar angle exceeds pi/6.
    const Image8 img =
        render_heatmap(pure_power(1.0), 1.0, 0.5, -2.0, 2.0, 0.0625, 4.0,
                       160, 120);
    REQUIRE(img.w == 160);
    REQUIRE(img.h == 120);
    REQUIRE(img.px.size() == size_t(160) * 120);
    int checked = 0;
    for (int iy = 0; iy < img.h; ++iy) {
        // Top row first: largest y at iy = 0.
        const double y = 4.0 - (iy + 0.5) * (4.0 - 0.0625) / img.h;
        for (int ix = 0; ix < img.w; ++ix) {
            const double x = -2.0 + (ix + 0.5) * 4.0 / img.w;
            const double sin_theta = y / std::hypot(x, y);
            if (std::abs(sin_theta - 0.5) < 0.02) continue;  // skip the edge
            const bool member = sin_theta >= 0.5;
            const std::uint8_t v = img.px[size_t(iy) * img.w + ix];
            REQUIRE((v == 255) == member);
            ++checked;
        }
    }
    CHECK(checked > 10000);
}

TEST_CASE("single-pixel heatmap equals pointwise membership") {
    const Image8 yes =
        render_heatmap(pure_power(1.0), 1.0, 0.5, -0.01, 0.01, 0.99, 1.01,
                       1, 1);
    CHECK(yes.px.size() == 1);
    CHECK(yes.px[0] == 255);
    const Image8 no =
        render_heatmap(pure_power(1.0), 1.0, 1.01, -0.01, 0.01, 0.99, 1.01,
                       1, 1);
    CHECK(no.px[0] < 255);
}

TEST_CASE("eps above the sup norm yields no member pixels") {
    const Image8 img =
        render_heatmap(pure_power(1.0), 1.0, 1.5, -2.0, 2.0, 0.0625, 4.0,
                       64, 48);
    for (std::uint8_t v : img.px) CHECK(v < 255);

    RunConfig cfg;
    const std::string csv = heatmap_members_csv(
        pure_power(1.0), 1.0, 1.5, -2.0, 2.0, 0.0625, 4.0, 64, 48, cfg);
    // Comment line + column header, no data rows.
    CHECK(csv.rfind("# config ", 0) == 0);
    const size_t nl1 = csv.find('\n');
    REQUIRE(nl1 != std::string::npos);
    CHECK(csv.substr(nl1 + 1) == "x,y\n");
}

TEST_CASE("PNG encoding is well-formed and deterministic") {
    Image8 img;
    img.w = 5;
    img.h = 3;
    img.px = {0,  10, 20,  30,  40,  50,  60,  70,
              80, 90, 100, 200, 255, 128, 64};
    const std::string png1 = encode_png_gray(img);
    const std::string png2 = encode_png_gray(img);
    CHECK(png1 == png2);

    static const unsigned char sig[8] = {0x89, 'P', 'N', 'G',
                                         0x0d, 0x0a, 0x1a, 0x0a};
    REQUIRE(png1.size() > 8);
    CHECK(std::memcmp(png1.data(), sig, 8) == 0);
    CHECK(png1.find("IHDR") != std::string::npos);
    CHECK(png1.find("IEND") != std::string::npos);

    // Round-trip the IDAT payload through zlib and compare scanlines.
    const size_t idat = png1.find("IDAT");
    REQUIRE(idat != std::string::npos);
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i)
        len = (len << 8) | std::uint8_t(png1[idat - 4 + i]);
    std::string raw((img.w + 1) * img.h, '\0');
    uLongf rawlen = raw.size();
    REQUIRE(uncompress(reinterpret_cast<Bytef*>(raw.data()), &rawlen,
                       reinterpret_cast<const Bytef*>(png1.data() + idat + 4),
                       len) == Z_OK);
    REQUIRE(rawlen == raw.size());
    for (int iy = 0; iy < img.h; ++iy) {
        CHECK(raw[size_t(iy) * (img.w + 1)] == 0);  // filter type none
        for (int ix = 0; ix < img.w; ++ix)
            CHECK(std::uint8_t(raw[size_t(iy) * (img.w + 1) + 1 + ix]) ==
                  img.px[size_t(iy) * img.w + ix]);
    }
}

TEST_CASE("viewport validation") {
    CHECK_THROWS_AS(render_heatmap(pure_power(1.0), 1.0, 0.5, -1, 1, -0.5, 1,
                                   8, 8),
                    OutOfDomain);
    CHECK_THROWS_AS(render_heatmap(ball_pole(1.0), 1.0, 0.5, -2, 2, 0.1, 0.9,
                                   8, 8),
                    OutOfDomain);
    CHECK_THROWS_AS(render_heatmap(pure_power(1.0), 1.0, 0.5, 1, -1, 0.1, 1,
                                   8, 8),
                    OutOfDomain);
    CHECK_NOTHROW(render_heatmap(ball_pole(1.0), 1.0, 0.5, -0.5, 0.5, -0.5,
                                 0.5, 4, 4));
}
