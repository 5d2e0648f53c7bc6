#ifndef NSG_ERROR_HPP_
#define NSG_ERROR_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nsg {

  // Base class for every error raised by the library.
  class error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed input: empty generator lists, nonpositive values, bad labels.
  class invalid_spec : public error {
   public:
    using error::error;
  };

  // Generators without truncation whose gcd is not 1.
  class non_cofinite : public error {
   public:
    using error::error;
  };

  class overflow_error : public error {
   public:
    using error::error;
  };

  // An operation was called outside its domain (e.g. count formulas at q = 0).
  class precondition_error : public error {
   public:
    using error::error;
  };

  // A construction recipe was given parameters violating one of its
  // hypotheses. `clause()` names the first failed clause.
  class hypothesis_violation : public error {
   public:
    explicit hypothesis_violation(std::string clause, std::string const& detail = {})
        : error("hypothesis violated: " + clause
                + (detail.empty() ? std::string() : " (" + detail + ")")),
          _clause(std::move(clause)) {}

    std::string const& clause() const noexcept {
      return _clause;
    }

   private:
    std::string _clause;
  };

  // Bad or incompatible checkpoint file.
  class checkpoint_error : public error {
   public:
    using error::error;
  };

  namespace checked {

    inline std::int64_t add(std::int64_t a, std::int64_t b) {
      std::int64_t r;
      if (__builtin_add_overflow(a, b, &r)) {
        throw overflow_error("integer overflow in addition");
      }
      return r;
    }

    inline std::int64_t sub(std::int64_t a, std::int64_t b) {
      std::int64_t r;
      if (__builtin_sub_overflow(a, b, &r)) {
        throw overflow_error("integer overflow in subtraction");
      }
      return r;
    }

    inline std::int64_t mul(std::int64_t a, std::int64_t b) {
      std::int64_t r;
      if (__builtin_mul_overflow(a, b, &r)) {
        throw overflow_error("integer overflow in multiplication");
      }
      return r;
    }

    inline std::int64_t pow(std::int64_t base, unsigned exp) {
      std::int64_t r = 1;
      for (unsigned i = 0; i < exp; ++i) {
        r = mul(r, base);
      }
      return r;
    }

    // C(n, k) with overflow detection; 0 when k < 0 or k > n.
    inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
      if (k < 0 || n < 0 || k > n) {
        return 0;
      }
      k = std::min(k, n - k);
      std::int64_t r = 1;
      for (std::int64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) is divisible by i at every step.
        __int128 t = static_cast<__int128>(r) * (n - k + i) / i;
        if (t > INT64_MAX) {
          throw overflow_error("integer overflow in binomial coefficient");
        }
        r = static_cast<std::int64_t>(t);
      }
      return r;
    }

  }  // namespace checked

}  // namespace nsg

#endif  // NSG_ERROR_HPP_
