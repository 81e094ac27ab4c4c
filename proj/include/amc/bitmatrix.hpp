#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amc {

/// Dense m x n matrix over {0,1}, bit-packed row by row. Column c of a row
/// lives in word c / 64 at bit c % 64; unused high bits of the last word
/// are always zero.
class BooleanMatrix {
public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  BooleanMatrix(std::size_t rows, std::size_t cols);

  static BooleanMatrix identity(std::size_t n);
  static BooleanMatrix ones(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (words_[r * stride_ + c / word_bits] >> (c % word_bits)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept {
    auto& w = words_[r * stride_ + c / word_bits];
    const word_type bit = word_type{1} << (c % word_bits);
    w = value ? (w | bit) : (w & ~bit);
  }

  std::span<const word_type> row(std::size_t r) const noexcept {
    return {words_.data() + r * stride_, stride_};
  }
  std::span<word_type> row(std::size_t r) noexcept { return {words_.data() + r * stride_, stride_}; }

  /// Bits [start, start + len) of row r packed into the low bits, len <= 64.
  word_type extract(std::size_t r, std::size_t start, std::size_t len) const noexcept;

  std::size_t row_weight(std::size_t r) const noexcept;

  bool operator==(const BooleanMatrix&) const = default;

private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t stride_;
  std::vector<word_type> words_;
};

struct ActiveSquareResult {
  std::size_t value = 0;
  std::size_t window = 0;
};

/// Number of 1-entries.
std::size_t weight(const BooleanMatrix& a);

/// floor(log2 m), with 0 for m = 1.
std::size_t active_window(std::size_t rows);

/// Weight of `a` after every 1 is dilated horizontally by `active_window(m)`
/// cells to each side within its row.
ActiveSquareResult active_square(const BooleanMatrix& a);

/// Each entry is independently 1 with probability `density`. The stream is
/// mt19937_64 and comparisons use 53-bit fractions, so output is stable
/// across standard libraries.
BooleanMatrix random_matrix(std::size_t rows, std::size_t cols, double density, std::uint64_t seed);

/// Text format: "m n\n" followed by m lines of n characters from {0,1}.
/// Throws ParseError with a 1-based line number.
BooleanMatrix parse_matrix(std::string_view text);
std::string serialize_matrix(const BooleanMatrix& a);

} // namespace amc
