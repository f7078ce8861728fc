#pragma once

#include <stdexcept>
#include <string>

namespace smartotps {

/// Precondition violated by a caller (index out of range, malformed parameters).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Text input that cannot be parsed (unknown mnemonic word, bad hex, bad file header).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input that fails an integrity check (mnemonic checksum).
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Merkle proof is malformed for the operation it is offered for
/// (wrong length, parity bits that disagree with the operation index).
class ProofError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A contract assertion failed; the call is rolled back.
class ContractRevert : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A party refused to continue a protocol (display mismatch, wrong phase).
class ProtocolAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace smartotps
