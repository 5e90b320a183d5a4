#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmodal {

  enum class Errc {
    NotAPartialOrder,
    NotALattice,
    NotAFrame,
    NotMeetClosed,
    NotAClosure,
    NotACongruence,
    NotAssociative,
    NotDistributive,
    NotInvolutive,
    UnitLawFails,
    NoStableSupport,
    NoSupport,
    SupportLocaleLawFails,
    InvalidGroupoid,
    NotJoinPreserving,
    NotConjugate,
    NotComplemented,
    NotInSupportLocale,
    TimeEnds,
    InternalValidationFailed,
    DepthExceeded,
    SyntaxError,
    UndeclaredWorld,
    UnknownSymbol,
    TooLarge,
  };

  inline std::string_view errc_name(Errc c) noexcept {
    switch (c) {
      case Errc::NotAPartialOrder: return "NotAPartialOrder";
      case Errc::NotALattice: return "NotALattice";
      case Errc::NotAFrame: return "NotAFrame";
      case Errc::NotMeetClosed: return "NotMeetClosed";
      case Errc::NotAClosure: return "NotAClosure";
      case Errc::NotACongruence: return "NotACongruence";
      case Errc::NotAssociative: return "NotAssociative";
      case Errc::NotDistributive: return "NotDistributive";
      case Errc::NotInvolutive: return "NotInvolutive";
      case Errc::UnitLawFails: return "UnitLawFails";
      case Errc::NoStableSupport: return "NoStableSupport";
      case Errc::NoSupport: return "NoSupport";
      case Errc::SupportLocaleLawFails: return "SupportLocaleLawFails";
      case Errc::InvalidGroupoid: return "InvalidGroupoid";
      case Errc::NotJoinPreserving: return "NotJoinPreserving";
      case Errc::NotConjugate: return "NotConjugate";
      case Errc::NotComplemented: return "NotComplemented";
      case Errc::NotInSupportLocale: return "NotInSupportLocale";
      case Errc::TimeEnds: return "TimeEnds";
      case Errc::InternalValidationFailed: return "InternalValidationFailed";
      case Errc::DepthExceeded: return "DepthExceeded";
      case Errc::SyntaxError: return "SyntaxError";
      case Errc::UndeclaredWorld: return "UndeclaredWorld";
      case Errc::UnknownSymbol: return "UnknownSymbol";
      case Errc::TooLarge: return "TooLarge";
    }
    return "Unknown";
  }

  // Every failure raised by the library carries one of the codes above.
  class Error : public std::runtime_error {
   public:
    Error(Errc code, std::string const& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what),
          _code(code) {}

    Errc code() const noexcept {
      return _code;
    }

   private:
    Errc _code;
  };

  // Outcome of an exhaustive law check.  `law` and `witness` are empty on
  // success.
  struct CheckResult {
    bool        ok = true;
    std::string law;
    std::string witness;

    static CheckResult pass() {
      return {};
    }
    static CheckResult fail(std::string law, std::string witness) {
      return {false, std::move(law), std::move(witness)};
    }
    explicit operator bool() const noexcept {
      return ok;
    }
  };

}  // namespace qmodal
