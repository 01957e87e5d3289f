#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "aniso/spectral/field.hpp"

namespace aniso::spectral {

/// Malformed or unreadable field container.
class FieldFormatError : public std::runtime_error {
 public:
  explicit FieldFormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Binary field container.
///
///   bytes 0..3    magic "ANBF"
///   bytes 4..7    format version (uint32 LE, currently 1)
///   bytes 8..19   n1, n2, n3 (uint32 LE)
///   bytes 20..23  component count (uint32 LE)
///   bytes 24..63  zero
///   payload       per component, every storage index in k3-major order,
///                 complex64 (float32 real, float32 imaginary, LE)
///
/// A JSON sidecar at `<path>.json` carries {"divfree", "provenance", "grid",
/// "components"}.
struct FieldFile {
  Grid grid;
  std::vector<ScalarField> components;
  bool divfree = false;
  nlohmann::json provenance = nlohmann::json::object();

  /// The three components as a vector field. Containers flagged divergence
  /// free are re-projected on load, since complex64 rounding perturbs the
  /// per-mode constraint at the 1e-8 level.
  VectorField as_vector() const;
};

constexpr std::uint32_t kFieldFormatVersion = 1;
constexpr std::size_t kFieldHeaderBytes = 64;

void write_field_file(const std::filesystem::path& path, const std::vector<ScalarField>& components,
                      bool divfree, const nlohmann::json& provenance = nlohmann::json::object());
void write_field_file(const std::filesystem::path& path, const VectorField& v,
                      const nlohmann::json& provenance = nlohmann::json::object());

/// Reads a container; the sidecar is optional (divfree defaults to false).
FieldFile read_field_file(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& path);

}  // namespace aniso::spectral
