#pragma once

#include "oddconn/errors.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace oddconn {

/// Grassmann parity, an element of Z_2. Addition is mod 2; the parity of a
/// product is the sum of parities.
class Parity {
  public:
    constexpr Parity() = default;
    static constexpr Parity even() { return Parity(0); }
    static constexpr Parity odd() { return Parity(1); }

    constexpr unsigned value() const { return v_; }
    constexpr bool is_odd() const { return v_ == 1; }

    friend constexpr Parity operator+(Parity a, Parity b) { return Parity((a.v_ + b.v_) & 1u); }
    constexpr Parity& operator+=(Parity b) {
        v_ = (v_ + b.v_) & 1u;
        return *this;
    }
    friend constexpr bool operator==(Parity a, Parity b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(Parity a, Parity b) { return a.v_ != b.v_; }

  private:
    constexpr explicit Parity(unsigned v) : v_(v) {}
    unsigned v_ = 0;
};

inline std::string to_string(Parity p) { return p.is_odd() ? "odd" : "even"; }

/// A fixed coordinate chart on a superdomain R^{n|m}: an ordered list of n
/// even coordinate names followed by m odd ones. The flattened index a runs
/// over even names first, then odd names, and parity(a) is the parity of the
/// coordinate.
class Chart {
  public:
    Chart(std::vector<std::string> even_names, std::vector<std::string> odd_names);

    std::size_t even_dim() const { return even_dim_; }
    std::size_t odd_dim() const { return names_.size() - even_dim_; }
    std::size_t dim() const { return names_.size(); }

    Parity parity(std::size_t a) const { return a < even_dim_ ? Parity::even() : Parity::odd(); }
    const std::string& name(std::size_t a) const { return names_.at(a); }
    /// For an odd coordinate, its position among the odd names (the generator
    /// index used in monomial bitmasks).
    std::size_t odd_position(std::size_t a) const { return a - even_dim_; }

    std::optional<std::size_t> index_of(std::string_view name) const;

    /// Reported as "n|m".
    std::string dim_string() const;

    bool operator==(const Chart& other) const { return names_ == other.names_ && even_dim_ == other.even_dim_; }
    bool operator!=(const Chart& other) const { return !(*this == other); }

  private:
    std::vector<std::string> names_; // even names then odd names
    std::size_t even_dim_ = 0;
    std::unordered_map<std::string, std::size_t> index_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> even_names, std::vector<std::string> odd_names);

/// Throws ChartMismatchError unless both charts are equal by value.
void require_same_chart(const Chart& a, const Chart& b, const char* where);

} // namespace oddconn
