#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "vric/sm/messages.hpp"

namespace vric::sm {

// Canonical JSON wire encoding for the POS/VIS service models. Key order is
// fixed to the SM table order and the output carries no whitespace, so
// identical messages always produce identical bytes. Decoding is strict:
// unknown keys, missing keys, wrong JSON types and out-of-range integers are
// all rejected.

struct CodecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input is not syntactically valid JSON.
struct MalformedMessage : CodecError {
  using CodecError::CodecError;
};

// Valid JSON that does not match the message schema.
struct SchemaViolation : CodecError {
  using CodecError::CodecError;
};

// `len` field disagrees with the entry list length.
struct LengthMismatch : CodecError {
  using CodecError::CodecError;
};

std::string encode_pos_indication(const PosIndication& msg);
PosIndication decode_pos_indication(std::string_view bytes);

std::string encode_vis_indication(const VisIndication& msg);
VisIndication decode_vis_indication(std::string_view bytes);

std::string encode_pos_control(const PosControl& msg);
PosControl decode_pos_control(std::string_view bytes);

// Standalone entry codecs (the indication codecs use these internally).
std::string encode_pos_entry(const PosDataEntry& entry);
PosDataEntry decode_pos_entry(std::string_view bytes);
std::string encode_vis_entry(const VisDataEntry& entry);
VisDataEntry decode_vis_entry(std::string_view bytes);

// Envelope codec for logs and the optional newline-delimited loopback
// transport (one envelope per line).
std::string encode_envelope(const BusEnvelope& env);
BusEnvelope decode_envelope(std::string_view bytes);

}  // namespace vric::sm
