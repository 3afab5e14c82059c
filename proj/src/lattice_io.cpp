#include "qlat/lattice_io.hpp"

#include "qlat/counting.hpp"
#include "qlat/errors.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <sstream>

namespace qlat {

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

namespace {

constexpr std::string_view kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

std::string body_of(const Lattice& lattice) {
    std::string out = "QLAT 1 ";
    out += lattice.is_boolean() ? "B" : std::to_string(lattice.q());
    out += " " + std::to_string(lattice.n()) + " " + std::to_string(lattice.size()) + "\n";
    const int n = lattice.n();
    for (Handle h = 0; h < lattice.size(); ++h) {
        const int k = lattice.dim(h);
        const auto d = lattice.digits(h);
        out += std::to_string(k);
        out += ':';
        for (int r = 0; r < k; ++r) {
            if (r > 0) out += ',';
            for (int c = 0; c < n; ++c) out += kDigits[d[static_cast<std::size_t>(r) * n + c]];
        }
        out += '\n';
    }
    return out;
}

int parse_int(std::string_view s, const char* what) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw FormatError(std::string("malformed ") + what + ": '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

} // namespace

std::string serialize_lattice(const Lattice& lattice) {
    std::string body = body_of(lattice);
    const std::string digest = sha256_hex(body);
    return body + "SHA256:" + digest + "\n";
}

std::string lattice_digest(const Lattice& lattice) { return sha256_hex(body_of(lattice)); }

Lattice parse_lattice(std::string_view text, const LatticeOptions& options) {
    const auto digest_pos = text.rfind("SHA256:");
    if (digest_pos == std::string_view::npos) throw FormatError("lattice cache is truncated: no digest line");
    const std::string_view body = text.substr(0, digest_pos);
    std::string_view digest_line = text.substr(digest_pos + 7);
    while (!digest_line.empty() && (digest_line.back() == '\n' || digest_line.back() == '\r')) digest_line.remove_suffix(1);
    if (body.empty() || body.back() != '\n') throw FormatError("lattice cache is truncated");
    if (sha256_hex(body) != digest_line) throw FormatError("lattice cache digest mismatch");

    auto lines = split(body.substr(0, body.size() - 1), '\n');
    const auto header = split(lines.front(), ' ');
    if (header.size() != 5 || header[0] != "QLAT") throw FormatError("not a lattice cache file");
    if (header[1] != "1") throw FormatError("unsupported lattice cache version " + std::string(header[1]));
    const int n = parse_int(header[3], "dimension");
    const int count = parse_int(header[4], "element count");
    const LatticeSpec spec =
        header[2] == "B" ? LatticeSpec::boolean(n) : LatticeSpec::linear(parse_int(header[2], "field order"), n);
    if (static_cast<int>(lines.size()) - 1 != count) throw FormatError("element count does not match the header");

    // Rebuilding is the validity check: the file must list exactly the canonical elements in canonical order.
    Lattice rebuilt = Lattice::build(spec, options);
    if (rebuilt.size() != static_cast<std::size_t>(count)) throw FormatError("element count is not the lattice size");
    for (int i = 0; i < count; ++i) {
        const auto line = lines[static_cast<std::size_t>(i) + 1];
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw FormatError("malformed element line " + std::to_string(i + 2));
        const int dim = parse_int(line.substr(0, colon), "element dimension");
        std::vector<std::uint8_t> digits;
        const auto rows_text = line.substr(colon + 1);
        if (!rows_text.empty()) {
            for (auto row : split(rows_text, ',')) {
                if (static_cast<int>(row.size()) != n) throw FormatError("row of wrong length on line " + std::to_string(i + 2));
                for (char ch : row) {
                    const auto pos = kDigits.find(ch);
                    if (pos == std::string_view::npos || static_cast<int>(pos) >= rebuilt.q()) {
                        throw FormatError("invalid digit on line " + std::to_string(i + 2));
                    }
                    digits.push_back(static_cast<std::uint8_t>(pos));
                }
            }
        }
        const auto h = static_cast<Handle>(i);
        if (dim != rebuilt.dim(h) || digits != rebuilt.digits(h)) {
            throw FormatError("element " + std::to_string(i) + " is not in canonical order");
        }
    }
    return rebuilt;
}

void save_lattice(const Lattice& lattice, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write lattice cache " + path.string());
    out << serialize_lattice(lattice);
    if (!out) throw UsageError("failed writing lattice cache " + path.string());
}

Lattice load_lattice(const std::filesystem::path& path, const LatticeOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read lattice cache " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_lattice(buf.str(), options);
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const LatticeSpec& spec) {
    const std::string tag = spec.is_boolean() ? "B" : "q" + std::to_string(spec.q);
    return dir / ("qlat_n" + std::to_string(spec.n) + "_" + tag + ".txt");
}

} // namespace qlat
