"""Known-answer vectors for the C++ unit tests, computed with hashlib, hmac
and the `cryptography` package."""
import hashlib
import hmac
import struct

from cryptography.hazmat.primitives.asymmetric.ed25519 import Ed25519PrivateKey
from cryptography.hazmat.primitives.ciphers.aead import ChaCha20Poly1305
from cryptography.hazmat.primitives import serialization


def sha(b):
    return hashlib.sha256(b).digest()


def raw_pk(sk):
    return sk.public_key().public_bytes(serialization.Encoding.Raw, serialization.PublicFormat.Raw)


print("sha256_empty", sha(b"").hex())
print("sha256_abc", sha(b"abc").hex())
print("hmac_jefe", hmac.new(b"Jefe", b"what do ya want for nothing?", hashlib.sha256).hexdigest())

seed = bytes.fromhex("9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60")
sk = Ed25519PrivateKey.from_private_bytes(seed)
print("ed25519_pk", raw_pk(sk).hex())
print("ed25519_sig_empty", sk.sign(b"").hex())

key = bytes(range(0x80, 0xA0))
nonce = bytes.fromhex("070000004041424344454647")
aad = bytes.fromhex("50515253c0c1c2c3c4c5c6c7")
pt = (b"Ladies and Gentlemen of the class of '99: If I could offer you only one tip "
      b"for the future, sunscreen would be it.")
print("aead_sealed", ChaCha20Poly1305(key).encrypt(nonce, pt, aad).hex())

# Transfer of 42 to sha256("bob"), sequence 7, signed by seed 0x01 * 32.
sk = Ed25519PrivateKey.from_private_bytes(b"\x01" * 32)
pk = raw_pk(sk)
sender = sha(pk)
payload = sha(b"bob") + struct.pack(">Q", 42)
signing = bytes([1, 6]) + sender + struct.pack(">Q", 7) + struct.pack(">I", len(payload)) + payload
print("tx_sender", sender.hex())
print("tx_id", sha(signing).hex())
print("tx_sig", sk.sign(signing).hex())

header = bytes([1]) + struct.pack(">Q", 0) + b"\x00" * 32 + struct.pack(">q", 0) + struct.pack(">Q", 0)
header += sha(b"datchain-genesis:datchain-local")
print("genesis_hash", sha(header).hex())

master = bytes(range(32))
sub_key = hmac.new(master, b"wm" + sha(b"k"), hashlib.sha256).digest()
print("wm_tag", hmac.new(sub_key, sha(b"s") + sha(b"e"), hashlib.sha256).hexdigest())
