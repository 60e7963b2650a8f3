#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pisot {

enum class errc {
    parse_error,
    not_monic,
    not_unit,
    not_pisot,
    reducible,
    precision_cap_exceeded,
    mixed_fields,
    division_by_zero,
    singular_input,
    internal_inconsistency,
    max_len_exceeded,
    max_steps_exceeded,
    out_of_range,
    digit_out_of_range,
    not_admissible,
    negative_difference,
    not_in_pisot_group,
    not_finitary,
    step_cap_exceeded,
    not_eventually_recurrent,
    not_recurrent,
    reconstruction_failed,
    did_not_stabilize,
    determinant_mismatch,
    kernel_violation,
    semiconjugacy_violation,
    factorization_violation,
};

constexpr std::string_view to_string(errc code) noexcept
{
    switch (code) {
    case errc::parse_error: return "ParseError";
    case errc::not_monic: return "NotMonic";
    case errc::not_unit: return "NotUnit";
    case errc::not_pisot: return "NotPisot";
    case errc::reducible: return "Reducible";
    case errc::precision_cap_exceeded: return "PrecisionCapExceeded";
    case errc::mixed_fields: return "MixedFields";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::singular_input: return "SingularInput";
    case errc::internal_inconsistency: return "InternalInconsistency";
    case errc::max_len_exceeded: return "MaxLenExceeded";
    case errc::max_steps_exceeded: return "MaxStepsExceeded";
    case errc::out_of_range: return "OutOfRange";
    case errc::digit_out_of_range: return "DigitOutOfRange";
    case errc::not_admissible: return "NotAdmissible";
    case errc::negative_difference: return "NegativeDifference";
    case errc::not_in_pisot_group: return "NotInPisotGroup";
    case errc::not_finitary: return "NotFinitary";
    case errc::step_cap_exceeded: return "StepCapExceeded";
    case errc::not_eventually_recurrent: return "NotEventuallyRecurrent";
    case errc::not_recurrent: return "NotRecurrent";
    case errc::reconstruction_failed: return "ReconstructionFailed";
    case errc::did_not_stabilize: return "DidNotStabilize";
    case errc::determinant_mismatch: return "DeterminantMismatch";
    case errc::kernel_violation: return "KernelViolation";
    case errc::semiconjugacy_violation: return "SemiconjugacyViolation";
    case errc::factorization_violation: return "FactorizationViolation";
    }
    return "Unknown";
}

/// Every failure in the library is reported as a pisot::error carrying a code.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace pisot
