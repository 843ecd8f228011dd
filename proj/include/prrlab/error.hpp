#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prrlab {

enum class errc {
  not_invertible,
  bad_modulus,
  zero_input,
  not_a_residue,
  bad_nonresidue,
  bad_parameters,
  sieve_too_small,
  limit_too_large,
  bound_exceeded,
  index_out_of_range,
  bad_factorization,
  registry_unknown,
  checkpoint_corrupt,
  denominator_divisible,
  not_prime,
};

constexpr std::string_view to_string(errc code) {
  switch (code) {
    case errc::not_invertible: return "NotInvertible";
    case errc::bad_modulus: return "BadModulus";
    case errc::zero_input: return "ZeroInput";
    case errc::not_a_residue: return "NotAResidue";
    case errc::bad_nonresidue: return "BadNonresidue";
    case errc::bad_parameters: return "BadParameters";
    case errc::sieve_too_small: return "SieveTooSmall";
    case errc::limit_too_large: return "LimitTooLarge";
    case errc::bound_exceeded: return "BoundExceeded";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::bad_factorization: return "BadFactorization";
    case errc::registry_unknown: return "RegistryUnknown";
    case errc::checkpoint_corrupt: return "CheckpointCorrupt";
    case errc::denominator_divisible: return "DenominatorDivisible";
    case errc::not_prime: return "NotPrime";
  }
  return "Unknown";
}

/// Every library failure carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace prrlab
