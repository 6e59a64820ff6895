#include "owncash/sweep.hpp"

namespace owncash {

std::vector<ApplyResult> check_batch_serial(const CertificateDb& snapshot,
                                            std::span<const OwnershipCert> certs) {
    std::vector<ApplyResult> results(certs.size());
    for (size_t i = 0; i < certs.size(); ++i) {
        results[i] = snapshot.check(certs[i]);
    }
    return results;
}

std::vector<ApplyResult> check_batch_parallel(const CertificateDb& snapshot,
                                              std::span<const OwnershipCert> certs) {
    std::vector<ApplyResult> results(certs.size());
    const int64_t n = static_cast<int64_t>(certs.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (int64_t i = 0; i < n; ++i) {
        results[i] = snapshot.check(certs[i]);
    }
    return results;
}

size_t count_applied(std::span<const ApplyResult> results) {
    size_t applied = 0;
    for (const ApplyResult& r : results) {
        if (r.applied) ++applied;
    }
    return applied;
}

}  // namespace owncash
