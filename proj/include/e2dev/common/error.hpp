#pragma once

#include <stdexcept>
#include <string>

namespace e2dev {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by every encode/decode path. Subclasses distinguish the failure kind.
class CodecError : public Error {
 public:
  using Error::Error;
};

class RangeError : public CodecError {
 public:
  using CodecError::CodecError;
};

class TruncationError : public CodecError {
 public:
  using CodecError::CodecError;
};

class MalformedError : public CodecError {
 public:
  using CodecError::CodecError;
};

class FrameError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace e2dev
