#include "io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include <fockangle/errors.hpp>
#include <fockangle/polynomial.hpp>

namespace fockangle::cli {

namespace {

double parse_real(std::string_view text, std::string_view token) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InputError("malformed complex number '" + std::string(token) + "'");
  }
  return value;
}

double parse_imag_coefficient(std::string_view text, std::string_view token) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_real(text, token);
}

struct Lines {
  std::vector<std::string> content;
  std::vector<int> numbers;
};

Lines read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path.string() + "'");
  Lines out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.content.push_back(line);
    out.numbers.push_back(number);
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string token;
  while (is >> token) out.push_back(token);
  return out;
}

[[noreturn]] void file_error(const std::filesystem::path& path, int line, const std::string& message) {
  std::ostringstream os;
  os << path.string() << ":" << line << ": " << message;
  throw InputError(os.str());
}

Matrix read_entries(const std::filesystem::path& path, const Lines& lines, Index count, Index width) {
  if (static_cast<Index>(lines.content.size()) != count + 1) {
    std::ostringstream os;
    os << "expected " << count << " data lines after the header, found " << lines.content.size() - 1;
    file_error(path, lines.numbers.front(), os.str());
  }
  Matrix rows(count, width);
  for (Index i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i + 1);
    const auto tokens = split_ws(lines.content[k]);
    if (static_cast<Index>(tokens.size()) != width) {
      std::ostringstream os;
      os << "expected " << width << " entries, found " << tokens.size();
      file_error(path, lines.numbers[k], os.str());
    }
    for (Index j = 0; j < width; ++j) {
      try {
        rows(i, j) = parse_complex(tokens[static_cast<std::size_t>(j)]);
      } catch (const InputError& e) {
        file_error(path, lines.numbers[k], e.what());
      }
    }
  }
  return rows;
}

Index parse_count(const std::filesystem::path& path, int line, const std::string& token, const char* what) {
  Index value = -1;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
    file_error(path, line, std::string("invalid ") + what + " '" + token + "'");
  }
  return value;
}

}  // namespace

Scalar parse_complex(std::string_view token) {
  if (token.empty()) throw InputError("empty complex number");
  if (token.back() != 'i') return {parse_real(token, token), 0.0};
  const std::string_view body = token.substr(0, token.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag_coefficient(body, token)};
  return {parse_real(body.substr(0, split), token), parse_imag_coefficient(body.substr(split), token)};
}

Subspace read_subspace_file(const std::filesystem::path& path, double rank_tol) {
  const Lines lines = read_lines(path);
  if (lines.content.empty()) throw InputError("subspace file '" + path.string() + "' is empty");
  const auto header = split_ws(lines.content.front());
  if (header.size() != 3 || header[0] != "dim") {
    file_error(path, lines.numbers.front(), "expected header 'dim d k'");
  }
  const Index d = parse_count(path, lines.numbers.front(), header[1], "ambient dimension");
  const Index k = parse_count(path, lines.numbers.front(), header[2], "vector count");
  if (d < 1) file_error(path, lines.numbers.front(), "ambient dimension must be positive");
  const Matrix vectors = read_entries(path, lines, k, d);
  try {
    return orthonormalize(vectors.transpose(), rank_tol);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  const Lines lines = read_lines(path);
  if (lines.content.empty()) throw InputError("matrix file '" + path.string() + "' is empty");
  const auto header = split_ws(lines.content.front());
  if (header.size() != 3 || header[0] != "matrix") {
    file_error(path, lines.numbers.front(), "expected header 'matrix rows cols'");
  }
  const Index rows = parse_count(path, lines.numbers.front(), header[1], "row count");
  const Index cols = parse_count(path, lines.numbers.front(), header[2], "column count");
  return read_entries(path, lines, rows, cols);
}

HomogeneousIdeal read_ideal_file(const std::filesystem::path& path, int d) {
  const Lines lines = read_lines(path);
  std::vector<HomogeneousPoly> generators;
  for (std::size_t i = 0; i < lines.content.size(); ++i) {
    try {
      generators.push_back(parse_polynomial(lines.content[i], d));
    } catch (const InputError& e) {
      file_error(path, lines.numbers[i], e.what());
    }
  }
  return HomogeneousIdeal(d, std::move(generators));
}

bool is_subspace_file(const std::filesystem::path& path) {
  const Lines lines = read_lines(path);
  if (lines.content.empty()) return false;
  const auto tokens = split_ws(lines.content.front());
  return !tokens.empty() && tokens.front() == "dim";
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write output file '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw InputError("failed writing output file '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot move output into place at '" + path.string() + "': " + ec.message());
  }
}

}  // namespace fockangle::cli
