#include "owncash/attack.hpp"

namespace owncash {

namespace {

crypto::KeyPair random_keypair(SplitMix64& rng) {
    return crypto::generate_keypair(make_seed(rng));
}

crypto::PublicKey random_pub(SplitMix64& rng) {
    return random_keypair(rng).public_key;
}

crypto::Signature random_sig(SplitMix64& rng) {
    crypto::Signature sig;
    for (size_t word = 0; word < 8; ++word) {
        uint64_t v = rng.next();
        for (size_t i = 0; i < 8; ++i) {
            sig.bytes[word * 8 + i] = static_cast<uint8_t>(v >> (8 * i));
        }
    }
    return sig;
}

const OwnershipCert& pick(SplitMix64& rng, const std::vector<OwnershipCert>& certs) {
    return certs[rng.next_below(certs.size())];
}

OwnershipCert signed_cert(uint64_t note_number, uint64_t epoch,
                          const crypto::PublicKey& owner,
                          const crypto::Digest& prev,
                          const crypto::KeyPair& signer) {
    OwnershipCert cert;
    cert.note_number = note_number;
    cert.epoch = epoch;
    cert.owner_public_key = owner;
    cert.prev_cert_digest = prev;
    cert.transfer_signature =
        crypto::sign(encode_ownership_statement(cert), signer);
    return cert;
}

// Flips at least one bit somewhere in one field of a copied certificate.
OwnershipCert tampered_copy(SplitMix64& rng, const OwnershipCert& original) {
    OwnershipCert cert = original;
    uint8_t flip = static_cast<uint8_t>(1 + rng.next_below(255));
    switch (rng.next_below(4)) {
        case 0:
            cert.owner_public_key[rng.next_below(32)] ^= flip;
            break;
        case 1:
            cert.transfer_signature.bytes[rng.next_below(64)] ^= flip;
            break;
        case 2:
            cert.prev_cert_digest.bytes[rng.next_below(32)] ^= flip;
            break;
        default:
            cert.epoch ^= (1 + rng.next_below(0xffff));
            break;
    }
    return cert;
}

}  // namespace

std::vector<OwnershipCert> make_forgery_batch(SplitMix64& rng,
                                              const AttackSurface& surface,
                                              size_t count) {
    std::vector<OwnershipCert> batch;
    batch.reserve(count);

    while (batch.size() < count) {
        switch (rng.next_below(5)) {
            case 0: {
                // Genesis for a fresh note from a key that is not the issuer.
                crypto::KeyPair fake_issuer = random_keypair(rng);
                batch.push_back(signed_cert(1'000'000 + rng.next_below(1'000'000), 0,
                                            random_pub(rng), crypto::kZeroDigest,
                                            fake_issuer));
                break;
            }
            case 1: {
                // Duplicate genesis claim for an already-recorded note.
                if (surface.observed_certs.empty()) continue;
                const OwnershipCert& existing = pick(rng, surface.observed_certs);
                crypto::KeyPair fake_issuer = random_keypair(rng);
                batch.push_back(signed_cert(existing.note_number, 0,
                                            random_pub(rng), crypto::kZeroDigest,
                                            fake_issuer));
                break;
            }
            case 2: {
                // Transfer off an observed certificate, signed by a random key.
                if (surface.observed_certs.empty()) continue;
                const OwnershipCert& base = pick(rng, surface.observed_certs);
                crypto::KeyPair wrong_key = random_keypair(rng);
                batch.push_back(signed_cert(base.note_number, base.epoch + 1,
                                            random_pub(rng), cert_digest(base),
                                            wrong_key));
                break;
            }
            case 3: {
                // Byte-tampered copy of an observed certificate.
                if (surface.observed_certs.empty()) continue;
                batch.push_back(tampered_copy(rng, pick(rng, surface.observed_certs)));
                break;
            }
            default: {
                // Garbage.
                OwnershipCert cert;
                cert.note_number = rng.next();
                cert.epoch = rng.next_below(8);
                cert.owner_public_key = random_pub(rng);
                for (size_t i = 0; i < 32; ++i) {
                    cert.prev_cert_digest.bytes[i] =
                        static_cast<uint8_t>(rng.next_below(256));
                }
                cert.transfer_signature = random_sig(rng);
                batch.push_back(std::move(cert));
                break;
            }
        }
    }
    return batch;
}

std::vector<OwnershipCert> make_theft_batch(SplitMix64& rng,
                                            const AttackSurface& surface,
                                            size_t count) {
    std::vector<OwnershipCert> batch;
    batch.reserve(count);
    const auto& records = surface.db->records();
    if (records.empty()) {
        return batch;
    }
    std::vector<const OwnershipCert*> heads;
    heads.reserve(records.size());
    for (const auto& [n, record] : records) {
        heads.push_back(&record.current);
    }

    for (size_t i = 0; i < count; ++i) {
        const OwnershipCert& head = *heads[rng.next_below(heads.size())];
        crypto::KeyPair thief = random_keypair(rng);
        // Perfectly chained; the only thing missing is the owner's key.
        OwnershipCert cert = signed_cert(head.note_number, head.epoch + 1,
                                         thief.public_key, cert_digest(head),
                                         thief);
        if (rng.next_below(2) == 0) {
            // A self-accepted steal: the countersignature is genuine, the
            // transfer signature still cannot be.
            cert.acceptance_signature =
                crypto::sign(encode_ownership_statement(cert), thief);
        }
        batch.push_back(std::move(cert));
    }
    return batch;
}

}  // namespace owncash
