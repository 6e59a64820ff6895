#pragma once

// The three-part note and the pure predicates over it.
//
//   Part A (OwnershipCert)    — mutable: names the current owner, replaced
//                               on every transfer.
//   Part B (NoteBody)         — frozen once minted.
//   Part C (AuthenticityCert) — issuer signature over hash(Part B), frozen.
//
// Both canonical encodings below are bit-exact wire formats; committed
// fixtures pin them.

#include <cstdint>
#include <optional>
#include <string>

#include "owncash/bytes.hpp"
#include "owncash/crypto.hpp"

namespace owncash {

inline constexpr size_t kNoteBodyEncodedSize = 56;
inline constexpr size_t kStatementEncodedSize = 84;

/// Frozen note content. currency is 3 ASCII uppercase letters; amounts are
/// integer minor units. The picture travels outside the protocol payload,
/// only its digest is bound into the note.
struct NoteBody {
    uint8_t version = 1;
    uint64_t note_number = 0;
    uint64_t amount_minor = 0;
    std::string currency;
    crypto::Digest picture_digest{};

    bool operator==(const NoteBody&) const = default;
};

/// Issuer's signature over hash(encode_note_body(body)).
struct AuthenticityCert {
    crypto::PublicKey issuer_public_key{};
    crypto::Signature body_signature{};

    bool operator==(const AuthenticityCert&) const = default;
};

/// Ownership certificate. epoch counts transfers from genesis (epoch 0,
/// all-zero prev_cert_digest); each certificate links to its predecessor via
/// prev_cert_digest, so a given certificate is valid at exactly one chain
/// position. transfer_signature is by the previous owner (the issuer at
/// genesis); acceptance_signature, when present, is by the named new owner.
struct OwnershipCert {
    uint64_t note_number = 0;
    uint64_t epoch = 0;
    crypto::PublicKey owner_public_key{};
    crypto::Digest prev_cert_digest{};
    crypto::Signature transfer_signature{};
    std::optional<crypto::Signature> acceptance_signature;

    bool operator==(const OwnershipCert&) const = default;
};

struct Note {
    OwnershipCert part_a;
    NoteBody part_b;
    AuthenticityCert part_c;

    bool operator==(const Note&) const = default;
};

// "EB01" | version(1) | note_number(8 BE) | amount_minor(8 BE) |
// currency(3) | picture_digest(32) — 56 bytes. Throws EncodingError unless
// currency is exactly 3 ASCII uppercase letters.
Bytes encode_note_body(const NoteBody& body);

// "EA01" | note_number(8 BE) | epoch(8 BE) | owner_public_key(32) |
// prev_cert_digest(32) — 84 bytes. Signature fields are excluded: this is
// the statement they sign.
Bytes encode_ownership_statement(const OwnershipCert& cert);

// hash(statement || transfer_signature); chains certificates together.
crypto::Digest cert_digest(const OwnershipCert& cert);

// Part C is by the trusted issuer and covers exactly this note's Part B.
bool verify_authenticity(const Note& note, const crypto::PublicKey& trusted_issuer);

// next continues prev: same note, epoch + 1, correct back link, and the
// transfer statement signed by prev's owner.
bool verify_transfer_link(const OwnershipCert& prev, const OwnershipCert& next);

// Epoch-0 shape with all-zero back link and an issuer transfer signature.
bool is_valid_genesis(const OwnershipCert& cert, const crypto::PublicKey& issuer);

}  // namespace owncash
