#pragma once

#include <stdexcept>
#include <string>

namespace gjn {

enum class Errc {
    NonHermitian,
    NoConvergence,
    DomainViolation,
    NotSymmetric,
    Singular,
    NotSymplectic,
    OutOfDomain,
    FormMismatch,
    VariableMismatch,
    SecondOrderResidue,
    CutoffTooSmall,
    BranchViolation,
    InvalidArgument,
    Overflow,
};

inline const char* errc_name(Errc c)
{
    switch (c) {
    case Errc::NonHermitian: return "NonHermitian";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::Singular: return "Singular";
    case Errc::NotSymplectic: return "NotSymplectic";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::FormMismatch: return "FormMismatch";
    case Errc::VariableMismatch: return "VariableMismatch";
    case Errc::SecondOrderResidue: return "SecondOrderResidue";
    case Errc::CutoffTooSmall: return "CutoffTooSmall";
    case Errc::BranchViolation: return "BranchViolation";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Overflow: return "Overflow";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace gjn
