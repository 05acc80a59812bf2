#include "dseries/error.hpp"

namespace dseries {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::ResourceLimit: return "resource limit";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::UnsupportedRange: return "unsupported range";
    case ErrorKind::NearSingularity: return "near singularity";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Configuration: return "configuration error";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Fitting: return "fitting error";
    case ErrorKind::InsufficientPrecision: return "insufficient precision";
    case ErrorKind::Ingestion: return "ingestion error";
  }
  return "error";
}

}  // namespace dseries
