#pragma once

#include <stdexcept>
#include <string>

namespace gouq {

enum class Errc {
  InvalidRate,
  InvalidC,
  DegenerateModel,
  NotInfinitelyDivisible,
  ZeroAtOrigin,
  PZero,
  QZero,
  DegenerateAB,
  NotApplicable,
  TruncationTooSmall,
  NotPisot,
  UncertifiedRoots,
};

constexpr const char* to_string(Errc c) noexcept {
  switch (c) {
    case Errc::InvalidRate: return "InvalidRate";
    case Errc::InvalidC: return "InvalidC";
    case Errc::DegenerateModel: return "DegenerateModel";
    case Errc::NotInfinitelyDivisible: return "NotInfinitelyDivisible";
    case Errc::ZeroAtOrigin: return "ZeroAtOrigin";
    case Errc::PZero: return "PZero";
    case Errc::QZero: return "QZero";
    case Errc::DegenerateAB: return "DegenerateAB";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::TruncationTooSmall: return "TruncationTooSmall";
    case Errc::NotPisot: return "NotPisot";
    case Errc::UncertifiedRoots: return "UncertifiedRoots";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gouq
