#include "aniso/spectral/field_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "aniso/spectral/ops.hpp"

namespace aniso::spectral {

namespace {

void put_u32(std::vector<unsigned char>& buf, std::size_t at, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) buf[at + b] = static_cast<unsigned char>((v >> (8 * b)) & 0xffu);
}

std::uint32_t get_u32(const unsigned char* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}

void put_f32(std::vector<unsigned char>& buf, double value) {
  const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(value));
  for (int b = 0; b < 4; ++b) buf.push_back(static_cast<unsigned char>((bits >> (8 * b)) & 0xffu));
}

double get_f32(const unsigned char* p) { return static_cast<double>(std::bit_cast<float>(get_u32(p))); }

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

VectorField FieldFile::as_vector() const {
  if (components.size() != 3) {
    throw FieldFormatError("expected 3 components, container holds " + std::to_string(components.size()));
  }
  VectorField v(components[0], components[1], components[2]);
  return divfree ? leray_project(v) : v;
}

void write_field_file(const std::filesystem::path& path, const std::vector<ScalarField>& components,
                      bool divfree, const nlohmann::json& provenance) {
  if (components.empty()) throw std::invalid_argument("write_field_file: no components");
  const Grid& grid = components.front().grid();
  for (const auto& c : components) require_same_grid(grid, c.grid(), "write_field_file");

  std::vector<unsigned char> buf(kFieldHeaderBytes, 0);
  std::memcpy(buf.data(), "ANBF", 4);
  put_u32(buf, 4, kFieldFormatVersion);
  put_u32(buf, 8, static_cast<std::uint32_t>(grid.n1()));
  put_u32(buf, 12, static_cast<std::uint32_t>(grid.n2()));
  put_u32(buf, 16, static_cast<std::uint32_t>(grid.n3()));
  put_u32(buf, 20, static_cast<std::uint32_t>(components.size()));
  buf.reserve(kFieldHeaderBytes + components.size() * grid.size() * 8);
  for (const auto& c : components) {
    for (const cplx& z : c.coeffs()) {
      put_f32(buf, z.real());
      put_f32(buf, z.imag());
    }
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FieldFormatError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw FieldFormatError("short write to " + path.string());

  nlohmann::json meta = {{"divfree", divfree},
                         {"provenance", provenance},
                         {"grid", {grid.n1(), grid.n2(), grid.n3()}},
                         {"components", components.size()},
                         {"format", "ANBF"},
                         {"version", kFieldFormatVersion}};
  std::ofstream side(sidecar_path(path), std::ios::trunc);
  side << meta.dump(2) << '\n';
}

void write_field_file(const std::filesystem::path& path, const VectorField& v, const nlohmann::json& provenance) {
  write_field_file(path, {v[0], v[1], v[2]}, v.divfree(), provenance);
}

FieldFile read_field_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FieldFormatError("cannot open field file " + path.string());
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < kFieldHeaderBytes || std::memcmp(buf.data(), "ANBF", 4) != 0) {
    throw FieldFormatError(path.string() + ": missing ANBF header");
  }
  const std::uint32_t version = get_u32(buf.data() + 4);
  if (version != kFieldFormatVersion) {
    throw FieldFormatError(path.string() + ": unsupported format version " + std::to_string(version));
  }
  const Grid grid(static_cast<int>(get_u32(buf.data() + 8)), static_cast<int>(get_u32(buf.data() + 12)),
                  static_cast<int>(get_u32(buf.data() + 16)));
  const std::uint32_t count = get_u32(buf.data() + 20);
  const std::size_t expected = kFieldHeaderBytes + std::size_t(count) * grid.size() * 8;
  if (count == 0 || buf.size() != expected) {
    throw FieldFormatError(path.string() + ": payload size " + std::to_string(buf.size()) + " != expected " +
                           std::to_string(expected));
  }

  FieldFile file{grid, {}, false, nlohmann::json::object()};
  const unsigned char* p = buf.data() + kFieldHeaderBytes;
  for (std::uint32_t c = 0; c < count; ++c) {
    std::vector<cplx> coeffs(grid.size());
    for (auto& z : coeffs) {
      z = cplx(get_f32(p), get_f32(p + 4));
      p += 8;
    }
    file.components.push_back(ScalarField::from_coefficients(grid, std::move(coeffs)));
  }

  if (std::ifstream side(sidecar_path(path)); side) {
    try {
      const auto meta = nlohmann::json::parse(side);
      file.divfree = meta.value("divfree", false);
      if (meta.contains("provenance")) file.provenance = meta["provenance"];
    } catch (const nlohmann::json::exception& e) {
      throw FieldFormatError(sidecar_path(path).string() + ": " + e.what());
    }
  }
  return file;
}

}  // namespace aniso::spectral
