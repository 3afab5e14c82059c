#pragma once

#include "qlat/lattice.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace qlat {

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

/// Versioned text cache:
///   QLAT 1 <q|B> <n> <count>
///   <dim>:<row1>,<row2>,...      one line per element in handle order
///   SHA256:<hex>                 over every preceding byte
std::string serialize_lattice(const Lattice& lattice);
Lattice parse_lattice(std::string_view text, const LatticeOptions& options = {});

/// Digest line value of the serialized lattice; identifies a lattice in reports.
std::string lattice_digest(const Lattice& lattice);

void save_lattice(const Lattice& lattice, const std::filesystem::path& path);
/// Throws FormatError on version mismatch, truncation or digest mismatch.
Lattice load_lattice(const std::filesystem::path& path, const LatticeOptions& options = {});

/// Canonical cache file name inside a cache directory, e.g. "qlat_n3_q2.txt" or "qlat_n4_B.txt".
std::filesystem::path cache_path(const std::filesystem::path& dir, const LatticeSpec& spec);

} // namespace qlat
