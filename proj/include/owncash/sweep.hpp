#pragma once

// Bulk certificate validation against a fixed db snapshot. check() is pure
// and a rejected certificate leaves a db unchanged, so for a batch in which
// nothing is applied the sweep is equivalent to applying the batch
// sequentially — the parity tests pin that.
//
// The serial loop is the reference; the parallel kernel (OpenMP when
// available) must produce index-for-index identical results.

#include <span>
#include <vector>

#include "owncash/certificate_db.hpp"

namespace owncash {

std::vector<ApplyResult> check_batch_serial(const CertificateDb& snapshot,
                                            std::span<const OwnershipCert> certs);

std::vector<ApplyResult> check_batch_parallel(const CertificateDb& snapshot,
                                              std::span<const OwnershipCert> certs);

size_t count_applied(std::span<const ApplyResult> results);

}  // namespace owncash
