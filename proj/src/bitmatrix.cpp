#include "amc/bitmatrix.hpp"

#include "amc/errors.hpp"

#include <bit>
#include <charconv>
#include <random>

namespace amc {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + BooleanMatrix::word_bits - 1) / BooleanMatrix::word_bits; }

BooleanMatrix::word_type tail_mask(std::size_t cols) {
  const auto rem = cols % BooleanMatrix::word_bits;
  return rem == 0 ? ~BooleanMatrix::word_type{0} : (BooleanMatrix::word_type{1} << rem) - 1;
}

// dst |= src shifted towards higher columns by `d`.
void or_shift_up(std::span<const std::uint64_t> src, std::span<std::uint64_t> dst, std::size_t d) {
  const auto ws = d / 64;
  const auto bs = d % 64;
  for (std::size_t i = dst.size(); i-- > ws;) {
    std::uint64_t v = src[i - ws] << bs;
    if (bs != 0 && i > ws) {
      v |= src[i - ws - 1] >> (64 - bs);
    }
    dst[i] |= v;
  }
}

// dst |= src shifted towards lower columns by `d`.
void or_shift_down(std::span<const std::uint64_t> src, std::span<std::uint64_t> dst, std::size_t d) {
  const auto ws = d / 64;
  const auto bs = d % 64;
  for (std::size_t i = 0; i + ws < src.size(); ++i) {
    std::uint64_t v = src[i + ws] >> bs;
    if (bs != 0 && i + ws + 1 < src.size()) {
      v |= src[i + ws + 1] << (64 - bs);
    }
    dst[i] |= v;
  }
}

} // namespace

BooleanMatrix::BooleanMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), words_(rows * stride_, 0) {}

BooleanMatrix BooleanMatrix::identity(std::size_t n) {
  BooleanMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a.set(i, i);
  }
  return a;
}

BooleanMatrix BooleanMatrix::ones(std::size_t rows, std::size_t cols) {
  BooleanMatrix a(rows, cols);
  if (cols == 0) {
    return a;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    auto w = a.row(r);
    std::fill(w.begin(), w.end(), ~word_type{0});
    w.back() &= tail_mask(cols);
  }
  return a;
}

BooleanMatrix::word_type BooleanMatrix::extract(std::size_t r, std::size_t start, std::size_t len) const noexcept {
  const auto w = row(r);
  const auto wi = start / word_bits;
  const auto bi = start % word_bits;
  word_type v = w[wi] >> bi;
  if (bi != 0 && bi + len > word_bits && wi + 1 < w.size()) {
    v |= w[wi + 1] << (word_bits - bi);
  }
  return len >= word_bits ? v : v & ((word_type{1} << len) - 1);
}

std::size_t BooleanMatrix::row_weight(std::size_t r) const noexcept {
  std::size_t total = 0;
  for (auto w : row(r)) {
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

std::size_t weight(const BooleanMatrix& a) {
  std::size_t total = 0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    total += a.row_weight(r);
  }
  return total;
}

std::size_t active_window(std::size_t rows) {
  return rows <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(rows) - 1);
}

ActiveSquareResult active_square(const BooleanMatrix& a) {
  ActiveSquareResult result;
  result.window = active_window(a.rows());
  if (a.cols() == 0) {
    return result;
  }
  std::vector<std::uint64_t> dilated(a.words_per_row());
  const auto mask = tail_mask(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto src = a.row(r);
    std::copy(src.begin(), src.end(), dilated.begin());
    for (std::size_t d = 1; d <= result.window; ++d) {
      or_shift_up(src, dilated, d);
      or_shift_down(src, dilated, d);
    }
    dilated.back() &= mask;
    for (auto w : dilated) {
      result.value += static_cast<std::size_t>(std::popcount(w));
    }
  }
  return result;
}

BooleanMatrix random_matrix(std::size_t rows, std::size_t cols, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw std::invalid_argument("density must lie in [0, 1]");
  }
  BooleanMatrix a(rows, cols);
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < density) {
        a.set(r, c);
      }
    }
  }
  return a;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text, bool& terminated) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      terminated = false;
      return lines;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  terminated = true;
  return lines;
}

bool parse_count(std::string_view s, std::size_t& out) {
  if (s.empty()) {
    return false;
  }
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace

BooleanMatrix parse_matrix(std::string_view text) {
  bool terminated = true;
  const auto lines = split_lines(text, terminated);
  if (lines.empty()) {
    throw ParseError(1, "missing header \"m n\"");
  }
  const auto header = lines[0];
  const auto sp = header.find(' ');
  std::size_t m = 0;
  std::size_t n = 0;
  if (sp == std::string_view::npos || !parse_count(header.substr(0, sp), m) ||
      !parse_count(header.substr(sp + 1), n)) {
    throw ParseError(1, "malformed header, expected \"m n\"");
  }
  if (m == 0 || n == 0) {
    throw ParseError(1, "matrix dimensions must be positive");
  }
  if (lines.size() - 1 != m) {
    throw ParseError(lines.size() < m + 1 ? lines.size() + 1 : m + 2,
                     "expected " + std::to_string(m) + " rows, found " + std::to_string(lines.size() - 1));
  }
  BooleanMatrix a(m, n);
  for (std::size_t r = 0; r < m; ++r) {
    const auto line = lines[r + 1];
    const auto lineno = r + 2;
    if (line.size() != n) {
      throw ParseError(lineno, "row length " + std::to_string(line.size()) + ", expected " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (line[c] == '1') {
        a.set(r, c);
      } else if (line[c] != '0') {
        throw ParseError(lineno, std::string("illegal character '") + line[c] + "' at column " + std::to_string(c + 1));
      }
    }
  }
  if (!terminated) {
    throw ParseError(m + 1, "missing final newline");
  }
  return a;
}

std::string serialize_matrix(const BooleanMatrix& a) {
  std::string out = std::to_string(a.rows()) + ' ' + std::to_string(a.cols()) + '\n';
  out.reserve(out.size() + a.rows() * (a.cols() + 1));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out.push_back(a.get(r, c) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

} // namespace amc
