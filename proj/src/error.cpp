#include "lsys/error.hpp"

namespace lsys {

const char* error_tag(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::IncompatibleStep: return "incompatible-step";
    case ErrorKind::IncompatibleSequence: return "incompatible-sequence";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::MissingProduction: return "missing-production";
    case ErrorKind::WordTooLong: return "word-too-long";
    }
    return "unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::IncompatibleStep:
    case ErrorKind::IncompatibleSequence: return 2;
    case ErrorKind::CapExceeded: return 3;
    default: return 1;
    }
}

}  // namespace lsys
