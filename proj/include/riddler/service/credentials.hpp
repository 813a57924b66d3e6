#pragma once

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include <string>
#include <string_view>
#include <vector>

#include "riddler/error.hpp"

namespace riddler::service {

inline std::string to_hex(const unsigned char* p, std::size_t n) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out += kDigits[p[i] >> 4];
        out += kDigits[p[i] & 0xf];
    }
    return out;
}

inline std::string random_hex(std::size_t bytes) {
    std::vector<unsigned char> buf(bytes);
    if (RAND_bytes(buf.data(), static_cast<int>(bytes)) != 1) throw Error("random source failed");
    return to_hex(buf.data(), bytes);
}

struct PasswordHash {
    std::string salt;  // hex
    std::string hash;  // hex
    int iterations = 0;
};

inline std::string pbkdf2_hex(std::string_view password, std::string_view salt, int iterations) {
    unsigned char out[32];
    if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()),
                          reinterpret_cast<const unsigned char*>(salt.data()), static_cast<int>(salt.size()),
                          iterations, EVP_sha256(), sizeof out, out) != 1)
        throw Error("password hashing failed");
    return to_hex(out, sizeof out);
}

inline PasswordHash hash_password(std::string_view password, int iterations) {
    PasswordHash h;
    h.salt = random_hex(16);
    h.iterations = iterations;
    h.hash = pbkdf2_hex(password, h.salt, iterations);
    return h;
}

inline bool verify_password(std::string_view password, const PasswordHash& h) {
    const std::string got = pbkdf2_hex(password, h.salt, h.iterations);
    return got.size() == h.hash.size() && CRYPTO_memcmp(got.data(), h.hash.data(), got.size()) == 0;
}

}  // namespace riddler::service
