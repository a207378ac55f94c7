#pragma once

#include "siftbound/chains.hpp"

#include <string>

namespace siftbound {

struct VerifyResult {
    bool valid = false;
    std::string reason; // first failed check, empty when valid
};

// Re-derives every claim in a certificate from scratch: step numbers,
// factorization products, primality (own Miller-Rabin), residue classes,
// successor minimality, and the claimed contradiction.  Shares no code with
// the search path.
VerifyResult verify_certificate(const ChainCertificate& cert);

} // namespace siftbound
