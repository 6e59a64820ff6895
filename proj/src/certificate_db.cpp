#include "owncash/certificate_db.hpp"

#include <charconv>
#include <sstream>

namespace owncash {

const char* to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::DuplicateGenesis: return "DuplicateGenesis";
        case RejectReason::UnknownNote: return "UnknownNote";
        case RejectReason::NotSignedByCurrentOwner: return "NotSignedByCurrentOwner";
        case RejectReason::EpochMismatch: return "EpochMismatch";
        case RejectReason::BadPrevDigest: return "BadPrevDigest";
        case RejectReason::BadSignature: return "BadSignature";
        case RejectReason::MissingAcceptance: return "MissingAcceptance";
    }
    return "Unknown";
}

std::string to_string(const ApplyResult& result) {
    if (result.applied) return "applied";
    return std::string("rejected:") + to_string(*result.reason);
}

ApplyResult CertificateDb::check(const OwnershipCert& cert) const {
    auto it = records_.find(cert.note_number);
    const Bytes statement = encode_ownership_statement(cert);

    if (cert.epoch == 0) {
        if (it != records_.end()) {
            return ApplyResult::rejected(RejectReason::DuplicateGenesis);
        }
        if (cert.prev_cert_digest != crypto::kZeroDigest) {
            return ApplyResult::rejected(RejectReason::BadPrevDigest);
        }
        if (!crypto::verify(statement, cert.transfer_signature, trusted_issuer_)) {
            return ApplyResult::rejected(RejectReason::BadSignature);
        }
    } else {
        if (it == records_.end()) {
            return ApplyResult::rejected(RejectReason::UnknownNote);
        }
        const OwnershipCert& current = it->second.current;
        if (cert.epoch != current.epoch + 1) {
            return ApplyResult::rejected(RejectReason::EpochMismatch);
        }
        if (cert.prev_cert_digest != cert_digest(current)) {
            return ApplyResult::rejected(RejectReason::BadPrevDigest);
        }
        if (!crypto::verify(statement, cert.transfer_signature,
                            current.owner_public_key)) {
            return ApplyResult::rejected(RejectReason::NotSignedByCurrentOwner);
        }
    }

    if (policy_.require_acceptance_signature && !cert.acceptance_signature) {
        return ApplyResult::rejected(RejectReason::MissingAcceptance);
    }
    if (cert.acceptance_signature &&
        !crypto::verify(statement, *cert.acceptance_signature,
                        cert.owner_public_key)) {
        return ApplyResult::rejected(RejectReason::BadSignature);
    }
    return ApplyResult::ok();
}

ApplyResult CertificateDb::apply_certificate(const OwnershipCert& cert) {
    ApplyResult result = check(cert);
    if (!result.applied) {
        return result;
    }
    auto it = records_.find(cert.note_number);
    if (it == records_.end()) {
        records_.emplace(cert.note_number, CertRecord{cert, {}});
    } else {
        if (policy_.retain_history) {
            it->second.history.push_back(it->second.current);
        }
        it->second.current = cert;
    }
    return result;
}

std::optional<crypto::PublicKey> CertificateDb::current_owner(
    uint64_t note_number) const {
    auto it = records_.find(note_number);
    if (it == records_.end()) return std::nullopt;
    return it->second.current.owner_public_key;
}

const CertRecord* CertificateDb::find(uint64_t note_number) const {
    auto it = records_.find(note_number);
    return it == records_.end() ? nullptr : &it->second;
}

std::string CertificateDb::export_db() const {
    std::ostringstream out;
    out << "OWNCASHDB v1\n";
    for (const auto& [n, record] : records_) {
        const OwnershipCert& c = record.current;
        out << "N=" << n << " OWNER=" << to_hex(c.owner_public_key)
            << " EPOCH=" << c.epoch
            << " PREV=" << to_hex(c.prev_cert_digest.bytes) << "\n";
        out << "XFER=" << to_hex(c.transfer_signature.bytes) << "\n";
        out << "ACCEPT=";
        if (c.acceptance_signature) {
            out << to_hex(c.acceptance_signature->bytes);
        } else {
            out << "-";
        }
        out << "\n";
    }
    return out.str();
}

namespace {

uint64_t parse_decimal(std::string_view text, size_t line_no) {
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError(line_no, "expected decimal number");
    }
    return value;
}

template <size_t N>
std::array<uint8_t, N> parse_hex_exact(std::string_view text, size_t line_no) {
    if (text.size() != N * 2) {
        throw ParseError(line_no, "expected " + std::to_string(N * 2) +
                                      " hex characters");
    }
    Bytes raw;
    try {
        raw = from_hex(text);
    } catch (const EncodingError&) {
        throw ParseError(line_no, "invalid hex");
    }
    std::array<uint8_t, N> out;
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

// Splits off "KEY=" and returns the value up to the next space (or the rest).
std::string_view take_field(std::string_view& rest, std::string_view key,
                            size_t line_no) {
    if (rest.substr(0, key.size()) != key) {
        throw ParseError(line_no, "expected field " + std::string(key));
    }
    rest.remove_prefix(key.size());
    size_t space = rest.find(' ');
    std::string_view value = rest.substr(0, space);
    rest = (space == std::string_view::npos) ? std::string_view{}
                                             : rest.substr(space + 1);
    return value;
}

}  // namespace

CertificateDb CertificateDb::import_db(std::string_view text,
                                       const crypto::PublicKey& trusted_issuer,
                                       DbPolicy policy) {
    CertificateDb db(trusted_issuer, policy);

    std::vector<std::string_view> lines;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            throw ParseError(lines.size() + 1, "missing trailing newline");
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }

    if (lines.empty() || lines[0] != "OWNCASHDB v1") {
        throw ParseError(1, "bad header, expected \"OWNCASHDB v1\"");
    }
    if ((lines.size() - 1) % 3 != 0) {
        throw ParseError(lines.size(), "truncated record block");
    }

    for (size_t i = 1; i < lines.size(); i += 3) {
        OwnershipCert cert;

        std::string_view rest = lines[i];
        cert.note_number = parse_decimal(take_field(rest, "N=", i + 1), i + 1);
        cert.owner_public_key =
            parse_hex_exact<crypto::kPublicKeyBytes>(take_field(rest, "OWNER=", i + 1), i + 1);
        cert.epoch = parse_decimal(take_field(rest, "EPOCH=", i + 1), i + 1);
        cert.prev_cert_digest.bytes =
            parse_hex_exact<crypto::kDigestBytes>(take_field(rest, "PREV=", i + 1), i + 1);
        if (!rest.empty()) {
            throw ParseError(i + 1, "trailing garbage");
        }

        std::string_view xfer = lines[i + 1];
        cert.transfer_signature.bytes = parse_hex_exact<crypto::kSignatureBytes>(
            take_field(xfer, "XFER=", i + 2), i + 2);

        std::string_view accept = lines[i + 2];
        std::string_view value = take_field(accept, "ACCEPT=", i + 3);
        if (value != "-") {
            crypto::Signature sig;
            sig.bytes = parse_hex_exact<crypto::kSignatureBytes>(value, i + 3);
            cert.acceptance_signature = sig;
        }

        if (!db.records_.emplace(cert.note_number, CertRecord{cert, {}}).second) {
            throw ParseError(i + 1, "duplicate note number");
        }
    }
    return db;
}

bool quorum_owner_check(std::span<const CertificateDb* const> peers,
                        uint64_t note_number,
                        const crypto::PublicKey& expected_owner,
                        size_t threshold) {
    size_t agreeing = 0;
    for (const CertificateDb* peer : peers) {
        auto owner = peer->current_owner(note_number);
        if (owner && *owner == expected_owner) {
            ++agreeing;
        }
    }
    return agreeing >= threshold;
}

}  // namespace owncash
