#include "framelab/error.hpp"

namespace framelab {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::SingularRestriction: return "SingularRestriction";
    case ErrorKind::RankError: return "RankError";
    case ErrorKind::InvalidDualParam: return "InvalidDualParam";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::NotAFrameSequence: return "NotAFrameSequence";
    case ErrorKind::DegenerateGavrutaDual: return "DegenerateGavrutaDual";
    case ErrorKind::NotApplicable: return "NotApplicable";
    }
    return "Unknown";
}

} // namespace framelab
