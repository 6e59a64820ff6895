#pragma once

// The currency issuer: mints frozen note bodies with authenticity
// certificates and signs genesis ownership certificates. A dishonest
// variant skips the cap and duplicate-genesis guards so attack scenarios
// can construct the very certificates honest nodes must reject.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "owncash/certificate_db.hpp"
#include "owncash/note.hpp"

namespace owncash {

struct IssuerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IssuanceCapExceeded : IssuerError {
    IssuanceCapExceeded() : IssuerError("issuance cap reached") {}
};
struct InvalidAmount : IssuerError {
    InvalidAmount() : IssuerError("amount must be positive") {}
};
struct UnknownNote : IssuerError {
    UnknownNote() : IssuerError("note number was not minted by this issuer") {}
};
struct DuplicateGenesis : IssuerError {
    DuplicateGenesis() : IssuerError("note already has a genesis certificate") {}
};

class Issuer {
  public:
    Issuer(crypto::KeyPair keypair, uint64_t first_note_number = 1,
           std::optional<uint64_t> issuance_cap = std::nullopt)
        : keypair_(std::move(keypair)),
          next_note_number_(first_note_number),
          cap_(issuance_cap) {}

    // Same powers, no honesty guards: can mint past the cap and sign a
    // second genesis for an already-issued note.
    static Issuer dishonest(crypto::KeyPair keypair,
                            uint64_t first_note_number = 1,
                            std::optional<uint64_t> issuance_cap = std::nullopt) {
        Issuer issuer(std::move(keypair), first_note_number, issuance_cap);
        issuer.dishonest_ = true;
        return issuer;
    }

    const crypto::PublicKey& public_key() const { return keypair_.public_key; }
    const crypto::KeyPair& keypair() const { return keypair_; }

    // Mints a fresh note body (unique number, digest of the picture) and the
    // authenticity certificate over it. Throws InvalidAmount,
    // IssuanceCapExceeded or EncodingError (bad currency).
    std::pair<NoteBody, AuthenticityCert> mint_note(std::span<const uint8_t> picture,
                                                    uint64_t amount_minor,
                                                    const std::string& currency);

    // Signs the genesis ownership certificate naming the first owner.
    // Throws UnknownNote, and DuplicateGenesis for an honest issuer.
    OwnershipCert issue_to(uint64_t note_number, const crypto::PublicKey& owner);

    Note assemble_note(uint64_t note_number, const OwnershipCert& part_a) const;

    size_t issued_count() const { return issued_.size(); }
    const std::map<uint64_t, NoteBody>& issued() const { return issued_; }

  private:
    crypto::KeyPair keypair_;
    uint64_t next_note_number_;
    std::optional<uint64_t> cap_;
    bool dishonest_ = false;
    std::map<uint64_t, NoteBody> issued_;
    std::set<uint64_t> genesis_done_;
};

struct IssuanceAudit {
    uint64_t count = 0;
    bool over_cap = false;
    std::vector<uint64_t> note_numbers;
};

// Counts the notes in the db whose stored chain starts at a genesis signed
// by issuer_pub. Notes whose genesis was pruned away (history retention off
// after transfers) cannot be attributed and are not counted, so audits run
// against retention-enabled databases.
IssuanceAudit audit_issuance(const CertificateDb& db,
                             const crypto::PublicKey& issuer_pub, uint64_t cap);

}  // namespace owncash
