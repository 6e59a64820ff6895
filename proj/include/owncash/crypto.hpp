#pragma once

// Signature and hash primitives the whole protocol is built on: Ed25519
// detached signatures and SHA-256, both via libsodium. Everything here is
// deterministic — same inputs give byte-identical outputs — which is what
// makes serialized fixtures and seeded simulation runs reproducible.
//
// Only this header's contract may be relied on by other modules; the
// concrete scheme is pinned by known-answer tests and can be swapped behind
// it.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "owncash/bytes.hpp"

namespace owncash::crypto {

inline constexpr size_t kSeedBytes = 32;
inline constexpr size_t kPublicKeyBytes = 32;
inline constexpr size_t kPrivateKeyBytes = 32;
inline constexpr size_t kSignatureBytes = 64;
inline constexpr size_t kDigestBytes = 32;

using Seed = std::array<uint8_t, kSeedBytes>;
using PublicKey = std::array<uint8_t, kPublicKeyBytes>;
using PrivateKey = std::array<uint8_t, kPrivateKeyBytes>;

struct SeedLengthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Signing key pair. public_key is a pure function of private_key.
/// private_key must never appear in any serialized note, certificate,
/// trace or report.
struct KeyPair {
    PrivateKey private_key{};
    PublicKey public_key{};

    bool operator==(const KeyPair&) const = default;
};

struct Signature {
    std::array<uint8_t, kSignatureBytes> bytes{};

    bool operator==(const Signature&) const = default;
};

struct Digest {
    std::array<uint8_t, kDigestBytes> bytes{};

    bool operator==(const Digest&) const = default;
    auto operator<=>(const Digest&) const = default;
};

inline constexpr Digest kZeroDigest{};

KeyPair generate_keypair(const Seed& seed);
// Span form validates the length at runtime; throws SeedLengthError.
KeyPair generate_keypair(std::span<const uint8_t> seed);

// OS-entropy seed for non-simulated use. Seeded streams are the norm
// everywhere else.
Seed random_seed();

Signature sign(std::span<const uint8_t> message, const KeyPair& key);

bool verify(std::span<const uint8_t> message, const Signature& sig,
            const PublicKey& pub);
// Span form throws EncodingError on malformed lengths, distinct from a
// clean false.
bool verify(std::span<const uint8_t> message, std::span<const uint8_t> sig,
            std::span<const uint8_t> pub);

Digest hash(std::span<const uint8_t> data);

}  // namespace owncash::crypto
