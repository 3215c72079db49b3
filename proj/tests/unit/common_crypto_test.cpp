// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include "datchain/common/codec.hpp"
#include "datchain/common/rng.hpp"
#include "datchain/crypto/aead.hpp"
#include "datchain/crypto/hash.hpp"
#include "datchain/crypto/keys.hpp"
#include "datchain/ledger/transaction.hpp"
#include "datchain/market/actions.hpp"

using namespace datchain;

// Known answers from tests/oracles/vectors.py.

TEST(Hash, Sha256KnownAnswers) {
    EXPECT_EQ(sha256("").hex(), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256("abc").hex(), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Hash, StreamingMatchesOneShot) {
    EXPECT_EQ(Sha256().update("a").update("bc").finish(), sha256("abc"));
}

TEST(Hash, HmacKnownAnswer) {
    EXPECT_EQ(hmac_sha256(as_bytes("Jefe"), as_bytes("what do ya want for nothing?")).hex(),
              "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
}

TEST(Hash, HexRoundTripAndLeadingZeros) {
    Hash h = Hash::from_hex("00f0000000000000000000000000000000000000000000000000000000000001");
    EXPECT_EQ(Hash::from_hex(h.hex()), h);
    EXPECT_EQ(h.leading_zero_bits(), 8u);
    EXPECT_EQ(Hash::zero().leading_zero_bits(), 256u);
    EXPECT_THROW(Hash::from_hex("abc"), std::invalid_argument);
}

TEST(Keys, Ed25519KnownAnswer) {
    Seed seed{};
    auto raw = from_hex("9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60");
    std::copy(raw.begin(), raw.end(), seed.begin());
    auto kp = KeyPair::from_seed(seed);
    EXPECT_EQ(to_hex(kp.public_key()), "d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a");
    auto sig = kp.sign({});
    EXPECT_EQ(to_hex(sig),
              "e5564300c360ac729086e2cc806e828a84877f1eb8e5d974d873e065224901555fb8821590a33bacc61e39701cf9b46bd25bf5f0595"
              "bbe24655141438e7a100b");
    EXPECT_TRUE(verify_signature(kp.public_key(), {}, sig));
    sig[0] ^= 1;
    EXPECT_FALSE(verify_signature(kp.public_key(), {}, sig));
}

TEST(Aead, Rfc8439Vector) {
    AeadKey key{};
    for (int i = 0; i < 32; ++i) key[i] = static_cast<std::uint8_t>(0x80 + i);
    AeadNonce nonce{};
    auto n = from_hex("070000004041424344454647");
    std::copy(n.begin(), n.end(), nonce.begin());
    auto aad = from_hex("50515253c0c1c2c3c4c5c6c7");
    std::string pt =
        "Ladies and Gentlemen of the class of '99: If I could offer you only one tip for the future, sunscreen would "
        "be it.";
    auto sealed = aead_seal(key, nonce, aad, as_bytes(pt));
    EXPECT_EQ(to_hex(sealed),
              "d31a8d34648e60db7b86afbc53ef7ec2a4aded51296e08fea9e2b5a736ee62d63dbea45e8ca9671282fafb69da92728b1a71de0a9e06"
              "0b2905d6a5b67ecd3b3692ddbd7f2d778b8c9803aee328091b58fab324e4fad675945585808b4831d7bc3ff4def08e4b7a9de576d2"
              "6586cec64b61161ae10b594f09e26a7e902ecbd0600691");
    auto opened = aead_open(key, nonce, aad, sealed);
    ASSERT_TRUE(opened);
    EXPECT_EQ(std::string(opened->begin(), opened->end()), pt);
    sealed.back() ^= 1;
    EXPECT_FALSE(aead_open(key, nonce, aad, sealed));
}

TEST(Transaction, IdAndSignatureMatchOracle) {
    Seed seed{};
    seed.fill(0x01);
    auto kp = KeyPair::from_seed(seed);
    market::TransferAction a{sha256("bob"), 42};
    auto tx = market::make_action_tx(a, 7, kp);
    EXPECT_EQ(tx.sender.hex(), "34750f98bd59fcfc946da45aaabe933be154a4b5094e1c4abf42866505f3c97e");
    EXPECT_EQ(tx.id().hex(), "ab6b82180402626d4eb9bb2533bf6c65f57dab97452260c5c8a915b02479632d");
    EXPECT_EQ(to_hex(tx.signature),
              "0147dfed905f1465ff88c0e5f3420f15d7be59d2e097d9ccf6dac2e8bca0db8f20f0c7276eb3c7533481296b38925d01ba6df5c838"
              "34ec1781d10ce17d078e09");
}

TEST(Codec, RoundTripAndTruncation) {
    ByteWriter w;
    w.u8(7).u32(0xdeadbeef).u64(1ull << 40).i64(-5).str("hi");
    Bytes data = w.data();
    ByteReader r(data);
    EXPECT_EQ(r.u8(), 7);
    EXPECT_EQ(r.u32(), 0xdeadbeefu);
    EXPECT_EQ(r.u64(), 1ull << 40);
    EXPECT_EQ(r.i64(), -5);
    auto s = r.bytes();
    EXPECT_EQ(std::string(s.begin(), s.end()), "hi");
    EXPECT_TRUE(r.done());
    data.pop_back();
    ByteReader t(data);
    t.raw(1 + 4 + 8 + 8);
    EXPECT_THROW(t.bytes(), DecodeError);
}

TEST(Codec, Base64RoundTrip) {
    Bytes b{0, 1, 2, 250, 251, 252, 253};
    EXPECT_EQ(from_base64(to_base64(b)), b);
    EXPECT_THROW(from_base64("!!!"), std::invalid_argument);
}

TEST(Rng, DeterministicAndForksIndependent) {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
    Rng c(42);
    Rng f1 = c.fork(1), f2 = c.fork(2);
    EXPECT_NE(f1.next(), f2.next());
    Rng d(9);
    for (int i = 0; i < 1000; ++i) EXPECT_LT(d.below(7), 7u);
}
