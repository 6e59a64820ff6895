// Compares the serial reference sweep against the OpenMP kernel on
// adversarial certificate batches, and checks they agree bit for bit.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "owncash/attack.hpp"
#include "owncash/issuer.hpp"
#include "owncash/sweep.hpp"

using namespace owncash;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

// An honest settled db with a few chains, plus the certs an eavesdropper
// would have captured.
struct Fixture {
    CertificateDb db;
    AttackSurface surface;
};

Fixture make_fixture(uint64_t seed, size_t note_count) {
    SplitMix64 rng(seed);
    crypto::KeyPair issuer_key = crypto::generate_keypair(make_seed(rng));
    Issuer issuer(issuer_key, 1000);
    CertificateDb db(issuer_key.public_key);
    std::vector<OwnershipCert> observed;

    for (size_t i = 0; i < note_count; ++i) {
        Bytes picture = bytes_of("bench note " + std::to_string(i));
        auto [body, part_c] = issuer.mint_note(picture, 500, "EUR");
        crypto::KeyPair owner = crypto::generate_keypair(make_seed(rng));
        OwnershipCert cert = issuer.issue_to(body.note_number, owner.public_key);
        db.apply_certificate(cert);
        observed.push_back(cert);

        // one hop so some chains sit above epoch 0
        crypto::KeyPair next = crypto::generate_keypair(make_seed(rng));
        OwnershipCert hop;
        hop.note_number = cert.note_number;
        hop.epoch = 1;
        hop.owner_public_key = next.public_key;
        hop.prev_cert_digest = cert_digest(cert);
        hop.transfer_signature =
            crypto::sign(encode_ownership_statement(hop), owner);
        db.apply_certificate(hop);
        observed.push_back(hop);
    }

    Fixture fx{std::move(db), {}};
    fx.surface = AttackSurface{&fx.db, issuer_key.public_key, std::move(observed)};
    return fx;
}

}  // namespace

int main(int argc, char** argv) {
    size_t batch_size = 20000;
    size_t repeats = 3;
    if (argc > 1) batch_size = std::stoull(argv[1]);
    if (argc > 2) repeats = std::stoull(argv[2]);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP not enabled)\n");
#endif

    Fixture fx = make_fixture(42, 16);
    SplitMix64 rng(7);
    std::vector<OwnershipCert> batch = make_forgery_batch(rng, fx.surface, batch_size);
    auto theft = make_theft_batch(rng, fx.surface, batch_size / 4);
    batch.insert(batch.end(), theft.begin(), theft.end());

    std::printf("%-10s %12s %12s %9s\n", "batch", "serial_ms", "parallel_ms",
                "speedup");

    double best_serial = 0, best_parallel = 0;
    std::vector<ApplyResult> serial, parallel;
    for (size_t r = 0; r < repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        serial = check_batch_serial(fx.db, batch);
        double s = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        parallel = check_batch_parallel(fx.db, batch);
        double p = seconds_since(t0);

        if (r == 0 || s < best_serial) best_serial = s;
        if (r == 0 || p < best_parallel) best_parallel = p;
    }

    std::printf("%-10zu %12.1f %12.1f %8.2fx\n", batch.size(),
                best_serial * 1e3, best_parallel * 1e3,
                best_serial / best_parallel);

    if (serial != parallel) {
        std::printf("MISMATCH: parallel kernel diverges from serial reference\n");
        return 1;
    }
    std::printf("parity: serial and parallel results identical, %zu applied\n",
                count_applied(serial));
    return count_applied(serial) == 0 ? 0 : 1;
}
