#include "owncash/note.hpp"

namespace owncash {

namespace {

constexpr char kBodyMagic[4] = {'E', 'B', '0', '1'};
constexpr char kStatementMagic[4] = {'E', 'A', '0', '1'};

void append_magic(Bytes& out, const char (&magic)[4]) {
    out.insert(out.end(), magic, magic + 4);
}

}  // namespace

Bytes encode_note_body(const NoteBody& body) {
    if (body.currency.size() != 3) {
        throw EncodingError("currency must be 3 characters, got \"" +
                            body.currency + "\"");
    }
    for (char c : body.currency) {
        if (c < 'A' || c > 'Z') {
            throw EncodingError("currency must be ASCII uppercase letters");
        }
    }

    Bytes out;
    out.reserve(kNoteBodyEncodedSize);
    append_magic(out, kBodyMagic);
    out.push_back(body.version);
    append_u64_be(out, body.note_number);
    append_u64_be(out, body.amount_minor);
    out.insert(out.end(), body.currency.begin(), body.currency.end());
    append_bytes(out, body.picture_digest.bytes);
    return out;
}

Bytes encode_ownership_statement(const OwnershipCert& cert) {
    Bytes out;
    out.reserve(kStatementEncodedSize);
    append_magic(out, kStatementMagic);
    append_u64_be(out, cert.note_number);
    append_u64_be(out, cert.epoch);
    append_bytes(out, cert.owner_public_key);
    append_bytes(out, cert.prev_cert_digest.bytes);
    return out;
}

crypto::Digest cert_digest(const OwnershipCert& cert) {
    Bytes data = encode_ownership_statement(cert);
    append_bytes(data, cert.transfer_signature.bytes);
    return crypto::hash(data);
}

bool verify_authenticity(const Note& note, const crypto::PublicKey& trusted_issuer) {
    if (note.part_c.issuer_public_key != trusted_issuer) {
        return false;
    }
    Bytes encoded;
    try {
        encoded = encode_note_body(note.part_b);
    } catch (const EncodingError&) {
        return false;
    }
    crypto::Digest d = crypto::hash(encoded);
    return crypto::verify(d.bytes, note.part_c.body_signature, trusted_issuer);
}

bool verify_transfer_link(const OwnershipCert& prev, const OwnershipCert& next) {
    if (next.note_number != prev.note_number) return false;
    if (next.epoch != prev.epoch + 1) return false;
    if (next.prev_cert_digest != cert_digest(prev)) return false;
    return crypto::verify(encode_ownership_statement(next),
                          next.transfer_signature, prev.owner_public_key);
}

bool is_valid_genesis(const OwnershipCert& cert, const crypto::PublicKey& issuer) {
    if (cert.epoch != 0) return false;
    if (cert.prev_cert_digest != crypto::kZeroDigest) return false;
    return crypto::verify(encode_ownership_statement(cert),
                          cert.transfer_signature, issuer);
}

}  // namespace owncash
