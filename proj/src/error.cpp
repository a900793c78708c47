#include "vmdlinear/error.hpp"

namespace vmdl {

std::string_view to_string(Errc code) {
    switch (code) {
        case Errc::TooShort: return "TooShort";
        case Errc::TooFewRows: return "TooFewRows";
        case Errc::ConstantSeries: return "ConstantSeries";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::EmptyBatch: return "EmptyBatch";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::NonFinite: return "NonFinite";
        case Errc::NonFiniteLoss: return "NonFiniteLoss";
        case Errc::KernelTooLarge: return "KernelTooLarge";
        case Errc::KernelEven: return "KernelEven";
        case Errc::ContextTooShort: return "ContextTooShort";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::MissingColumn: return "MissingColumn";
        case Errc::Parse: return "Parse";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

bool is_numeric(Errc code) {
    return code == Errc::NonFinite || code == Errc::NonFiniteLoss;
}

}  // namespace vmdl
