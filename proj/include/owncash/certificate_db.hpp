#pragma once

// Each node's authoritative map from note number to the current ownership
// certificate. A certificate is applied only if it validly extends what the
// node already holds; a rejected certificate leaves the db untouched, so at
// most one certificate per (note, epoch) is ever accepted by a given node.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "owncash/note.hpp"

namespace owncash {

enum class RejectReason {
    DuplicateGenesis,
    UnknownNote,
    NotSignedByCurrentOwner,
    EpochMismatch,
    BadPrevDigest,
    BadSignature,
    MissingAcceptance,
};

const char* to_string(RejectReason reason);

struct ApplyResult {
    bool applied = false;
    std::optional<RejectReason> reason;

    static ApplyResult ok() { return {true, std::nullopt}; }
    static ApplyResult rejected(RejectReason r) { return {false, r}; }

    bool operator==(const ApplyResult&) const = default;
};

std::string to_string(const ApplyResult& result);

struct DbPolicy {
    // Reject transfers lacking the new owner's countersignature.
    bool require_acceptance_signature = false;
    // Keep superseded certificates instead of discarding them on replace.
    bool retain_history = false;

    bool operator==(const DbPolicy&) const = default;
};

struct CertRecord {
    OwnershipCert current;
    // Oldest first; with retention on, history + current is the full chain.
    std::vector<OwnershipCert> history;

    bool operator==(const CertRecord&) const = default;
};

struct ParseError : std::runtime_error {
    size_t line;

    ParseError(size_t line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
          line(line_no) {}
};

class CertificateDb {
  public:
    explicit CertificateDb(const crypto::PublicKey& trusted_issuer,
                           DbPolicy policy = {})
        : trusted_issuer_(trusted_issuer), policy_(policy) {}

    // Pure validation against the current state; never mutates. Genesis
    // certificates (epoch 0) must be issuer-signed and new; transfers must
    // extend the stored chain head. A present acceptance signature is
    // always checked; an absent one is tolerated unless policy requires it.
    ApplyResult check(const OwnershipCert& cert) const;

    // check() + commit. On success the certificate replaces the record head
    // (the old head moves to history when retention is on).
    ApplyResult apply_certificate(const OwnershipCert& cert);

    std::optional<crypto::PublicKey> current_owner(uint64_t note_number) const;

    const CertRecord* find(uint64_t note_number) const;

    const std::map<uint64_t, CertRecord>& records() const { return records_; }
    const crypto::PublicKey& trusted_issuer() const { return trusted_issuer_; }
    const DbPolicy& policy() const { return policy_; }

    // Line-oriented snapshot of the current certificates, three lines per
    // record after the header, sorted by note number:
    //   OWNCASHDB v1
    //   N=<decimal> OWNER=<hex64> EPOCH=<decimal> PREV=<hex64>
    //   XFER=<hex128>
    //   ACCEPT=<hex128 or ->
    std::string export_db() const;

    // Structural parse of the export format; throws ParseError with the
    // offending line number. Signatures are not re-verified: an imported db
    // is a read-only snapshot of another node's claims, consulted, not
    // trusted.
    static CertificateDb import_db(std::string_view text,
                                   const crypto::PublicKey& trusted_issuer,
                                   DbPolicy policy = {});

  private:
    std::map<uint64_t, CertRecord> records_;
    crypto::PublicKey trusted_issuer_;
    DbPolicy policy_;
};

// True iff at least `threshold` peers currently name `expected_owner` for
// the note. threshold 0 is vacuously true.
bool quorum_owner_check(std::span<const CertificateDb* const> peers,
                        uint64_t note_number,
                        const crypto::PublicKey& expected_owner,
                        size_t threshold);

}  // namespace owncash
