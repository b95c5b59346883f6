#include "pvc/hmac.hpp"

#include <openssl/core_names.h>
#include <openssl/evp.h>

#include <stdexcept>

namespace pvc {

Digest sha256(ByteView data) {
  Digest out{};
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) || len != 32)
    throw std::runtime_error("EVP_Digest(sha256) failed");
  return out;
}

Digest hmac_sha256(ByteView key, ByteView data) {
  static EVP_MAC* mac = EVP_MAC_fetch(nullptr, "HMAC", nullptr);
  if (!mac) throw std::runtime_error("EVP_MAC_fetch(HMAC) failed");

  EVP_MAC_CTX* ctx = EVP_MAC_CTX_new(mac);
  if (!ctx) throw std::runtime_error("EVP_MAC_CTX_new failed");

  char digest_name[] = "SHA256";
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_DIGEST, digest_name, 0),
      OSSL_PARAM_construct_end(),
  };

  Digest out{};
  std::size_t len = 0;
  int ok = EVP_MAC_init(ctx, key.data(), key.size(), params) &&
           EVP_MAC_update(ctx, data.data(), data.size()) &&
           EVP_MAC_final(ctx, out.data(), &len, out.size());
  EVP_MAC_CTX_free(ctx);
  if (!ok || len != 32) throw std::runtime_error("HMAC-SHA256 computation failed");
  return out;
}

bool ct_equal(ByteView a, ByteView b) {
  if (a.size() != b.size()) return false;
  unsigned char acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc |= a[i] ^ b[i];
  return acc == 0;
}

}  // namespace pvc
