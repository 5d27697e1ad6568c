#pragma once

#include <stdexcept>
#include <string>

namespace kleinperm {

enum class Errc {
    ReducibleModulus,
    ReducibleF,
    FNotMonic,
    RelationViolation,
    FieldMismatch,
    AmbientMismatch,
    DimensionMismatch,
    NotStable,
    NotEquivariant,
    NotEssential,
    NotIndecomposable,
    IdentificationMismatch,
    EnumerationBudgetExceeded,
    BadLabel,
    BadFieldSpec,
    BadFile,
    Internal,
};

const char* errc_name(Errc c);

/// Library-wide exception. Carries a machine-readable code so the CLI can
/// map failures onto exit codes without string matching.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace kleinperm
