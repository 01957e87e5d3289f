#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "aniso/initial_data.hpp"
#include "aniso/spectral/field_io.hpp"
#include "aniso/spectral/ops.hpp"
#include "oracles.hpp"

using namespace aniso::spectral;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "aniso_field_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("header layout") {
  const Grid g(8, 10, 12);
  const ScalarField f = oracle::field(g, {{{1, 1, 1}, {0.5, -0.25}}});
  const fs::path p = scratch("layout.anbf");
  write_field_file(p, {f, f}, false, {{"note", "layout"}});
  std::ifstream in(p, std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  REQUIRE(bytes.size() == 64 + 2 * g.size() * 8);
  CHECK(std::memcmp(bytes.data(), "ANBF", 4) == 0);
  auto u32 = [&](std::size_t at) {
    return std::uint32_t(bytes[at]) | std::uint32_t(bytes[at + 1]) << 8 | std::uint32_t(bytes[at + 2]) << 16 |
           std::uint32_t(bytes[at + 3]) << 24;
  };
  CHECK(u32(4) == 1);
  CHECK(u32(8) == 8);
  CHECK(u32(12) == 10);
  CHECK(u32(16) == 12);
  CHECK(u32(20) == 2);
  for (std::size_t i = 24; i < 64; ++i) CHECK(bytes[i] == 0);
  // Coefficient (1,1,1) as float32 pairs.
  const std::size_t at = 64 + g.index(1, 1, 1) * 8;
  float re, im;
  std::memcpy(&re, &bytes[at], 4);
  std::memcpy(&im, &bytes[at + 4], 4);
  CHECK(re == 0.5f);
  CHECK(im == -0.25f);
}

TEST_CASE("round trip with float32 rounding and sidecar") {
  const Grid g = Grid::cube(16);
  const VectorField v = aniso::init_random_divfree(g, {-5.0 / 3.0, 3, 1.0, 1.0, 5.0, false});
  const fs::path p = scratch("roundtrip.anbf");
  write_field_file(p, v, {{"generator", "random"}});
  const FieldFile file = read_field_file(p);
  CHECK(file.grid == g);
  CHECK(file.divfree);
  CHECK(file.provenance["generator"] == "random");
  const VectorField back = file.as_vector();
  CHECK(back.divfree());
  for (int c = 0; c < 3; ++c)
    for (std::size_t n = 0; n < g.size(); ++n) CHECK(std::abs(back[c][n] - v[c][n]) <= 1e-7 * v.max_amplitude());
}

TEST_CASE("malformed containers are rejected") {
  const fs::path p = scratch("bad.anbf");
  {
    std::ofstream out(p, std::ios::binary);
    out << "NOPE";
  }
  CHECK_THROWS_AS(read_field_file(p), FieldFormatError);

  const Grid g = Grid::cube(8);
  write_field_file(p, {ScalarField(g)}, false, {});
  fs::resize_file(p, fs::file_size(p) - 8);
  CHECK_THROWS_AS(read_field_file(p), FieldFormatError);

  write_field_file(p, {ScalarField(g)}, false, {});
  {
    std::fstream io(p, std::ios::binary | std::ios::in | std::ios::out);
    io.seekp(4);
    const char v2[4] = {2, 0, 0, 0};
    io.write(v2, 4);
  }
  CHECK_THROWS_AS(read_field_file(p), FieldFormatError);
  CHECK_THROWS_AS(read_field_file(scratch("missing.anbf")), FieldFormatError);
}
