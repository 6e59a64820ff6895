#include "owncash/crypto.hpp"

#include <sodium.h>

#include <cstring>

namespace owncash::crypto {

namespace {

void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) {
        throw std::runtime_error("libsodium initialization failed");
    }
}

}  // namespace

KeyPair generate_keypair(const Seed& seed) {
    ensure_sodium();
    static_assert(kSeedBytes == crypto_sign_SEEDBYTES);
    static_assert(kPublicKeyBytes == crypto_sign_PUBLICKEYBYTES);

    KeyPair kp;
    uint8_t sk[crypto_sign_SECRETKEYBYTES];
    crypto_sign_seed_keypair(kp.public_key.data(), sk, seed.data());
    kp.private_key = seed;
    sodium_memzero(sk, sizeof sk);
    return kp;
}

KeyPair generate_keypair(std::span<const uint8_t> seed) {
    if (seed.size() != kSeedBytes) {
        throw SeedLengthError("seed must be exactly 32 bytes, got " +
                              std::to_string(seed.size()));
    }
    Seed s;
    std::memcpy(s.data(), seed.data(), kSeedBytes);
    return generate_keypair(s);
}

Seed random_seed() {
    ensure_sodium();
    Seed s;
    randombytes_buf(s.data(), s.size());
    return s;
}

Signature sign(std::span<const uint8_t> message, const KeyPair& key) {
    ensure_sodium();
    static_assert(kSignatureBytes == crypto_sign_BYTES);

    // libsodium's expanded secret key layout is seed || public key.
    uint8_t sk[crypto_sign_SECRETKEYBYTES];
    std::memcpy(sk, key.private_key.data(), kPrivateKeyBytes);
    std::memcpy(sk + kPrivateKeyBytes, key.public_key.data(), kPublicKeyBytes);

    Signature sig;
    crypto_sign_detached(sig.bytes.data(), nullptr, message.data(),
                         message.size(), sk);
    sodium_memzero(sk, sizeof sk);
    return sig;
}

bool verify(std::span<const uint8_t> message, const Signature& sig,
            const PublicKey& pub) {
    ensure_sodium();
    return crypto_sign_verify_detached(sig.bytes.data(), message.data(),
                                       message.size(), pub.data()) == 0;
}

bool verify(std::span<const uint8_t> message, std::span<const uint8_t> sig,
            std::span<const uint8_t> pub) {
    if (sig.size() != kSignatureBytes) {
        throw EncodingError("signature must be 64 bytes, got " +
                            std::to_string(sig.size()));
    }
    if (pub.size() != kPublicKeyBytes) {
        throw EncodingError("public key must be 32 bytes, got " +
                            std::to_string(pub.size()));
    }
    Signature s;
    PublicKey p;
    std::memcpy(s.bytes.data(), sig.data(), kSignatureBytes);
    std::memcpy(p.data(), pub.data(), kPublicKeyBytes);
    return verify(message, s, p);
}

Digest hash(std::span<const uint8_t> data) {
    ensure_sodium();
    static_assert(kDigestBytes == crypto_hash_sha256_BYTES);

    Digest d;
    crypto_hash_sha256(d.bytes.data(), data.data(), data.size());
    return d;
}

}  // namespace owncash::crypto
