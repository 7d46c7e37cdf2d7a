#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <fockangle/drury_arveson.hpp>
#include <fockangle/subspace.hpp>

namespace fockangle::cli {

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (exponents allowed in a and b).
Scalar parse_complex(std::string_view token);

/// Subspace file: first line `dim d k`, then k lines of d complex entries,
/// one spanning vector per line. Blank lines and lines starting with '#' are
/// ignored. The vectors are orthonormalised with `rank_tol`.
Subspace read_subspace_file(const std::filesystem::path& path, double rank_tol);

/// Matrix file: first line `matrix rows cols`, then `rows` lines of `cols` entries.
Matrix read_matrix_file(const std::filesystem::path& path);

/// Ideal file: one generator per line in the polynomial grammar.
HomogeneousIdeal read_ideal_file(const std::filesystem::path& path, int d);

/// True when the first content line of the file starts with `dim`.
bool is_subspace_file(const std::filesystem::path& path);

/// Writes `contents` to a temporary file next to `path`, then renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace fockangle::cli
