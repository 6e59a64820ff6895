#pragma once

// Randomized adversarial certificate construction. Batches are seeded and
// reproducible; every certificate produced here must be rejected by an
// honest db holding the surface's records.

#include <vector>

#include "owncash/certificate_db.hpp"
#include "owncash/rng.hpp"

namespace owncash {

// What the adversary can see: an honest node's db snapshot plus the raw
// certificates that crossed the wire (notes are copyable by design, so the
// adversary holds full copies — everything except private keys).
struct AttackSurface {
    const CertificateDb* db = nullptr;
    crypto::PublicKey issuer_pub{};
    std::vector<OwnershipCert> observed_certs;
};

// Mixed forgeries: genesis certificates from non-issuer keys, duplicate
// genesis claims, transfers signed by random keys, byte-tampered copies of
// observed certificates, and pure garbage.
std::vector<OwnershipCert> make_forgery_batch(SplitMix64& rng,
                                              const AttackSurface& surface,
                                              size_t count);

// Theft attempts: transfers that chain correctly off the current record
// (right epoch, right back link) but are signed without the owner's
// private key.
std::vector<OwnershipCert> make_theft_batch(SplitMix64& rng,
                                            const AttackSurface& surface,
                                            size_t count);

}  // namespace owncash
