# Copyright 2026 The qpke Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reference sponge written from docs/hash.md, used to produce test vectors.

Prints `tag|key-bits|msg-bits|out_bits|hex` lines for the C++ known-answer
tests. Bit strings are written '0'/'1' with bit 0 first; output hex is the
LSB-first byte packing.
"""

M = (1 << 64) - 1
RC = [0x243F6A8885A308D3, 0x13198A2E03707344, 0xA4093822299F31D0, 0x082EFA98EC4E6C89,
      0x452821E638D01377, 0xBE5466CF34E90C6C, 0xC0AC29B7C97C50DD, 0x3F84D5B5B5470917]
IV = [0x6A09E667F3BCC908, 0xBB67AE8584CAA73B, 0x3C6EF372FE94F82B, 0xA54FF53A5F1D36F1]


def rotl(x, r):
    return ((x << r) | (x >> (64 - r))) & M


def permute(s):
    v0, v1, v2, v3 = s
    for rc in RC:
        v0 = (v0 + v1) & M; v1 = rotl(v1, 13); v1 ^= v0; v0 = rotl(v0, 32)
        v2 = (v2 + v3) & M; v3 = rotl(v3, 16); v3 ^= v2
        v0 = (v0 + v3) & M; v3 = rotl(v3, 21); v3 ^= v0
        v2 = (v2 + v1) & M; v1 = rotl(v1, 17); v1 ^= v2; v2 = rotl(v2, 32)
        v0 ^= rc
    return [v0, v1, v2, v3]


def bits_field(bits):
    n = len(bits)
    packed = bytearray((n + 7) // 8)
    for j, c in enumerate(bits):
        if c == "1":
            packed[j // 8] |= 1 << (j % 8)
    return n.to_bytes(8, "little") + bytes(packed)


def sponge(tag, fields, out_bits):
    data = len(tag).to_bytes(8, "little") + tag.encode()
    for f in fields:
        data += bits_field(f)
    block = bytearray(16)
    tail = len(data) % 16
    padded = bytearray(data[len(data) - tail:]) + bytearray(16 - tail)
    padded[tail] ^= 0x01
    padded[15] ^= 0x80
    data = data[:len(data) - tail] + bytes(padded)
    s = list(IV)
    for i in range(0, len(data), 16):
        s[0] ^= int.from_bytes(data[i:i + 8], "little")
        s[1] ^= int.from_bytes(data[i + 8:i + 16], "little")
        s = permute(s)
    out = b""
    while len(out) * 8 < out_bits:
        out += s[0].to_bytes(8, "little") + s[1].to_bytes(8, "little")
        s = permute(s)
    nbytes = (out_bits + 7) // 8
    out = bytearray(out[:nbytes])
    if out_bits % 8:
        out[-1] &= (1 << (out_bits % 8)) - 1
    return out.hex()


CASES = [
    ("qpke.test", [""], 128),
    ("qpke.test", ["1"], 128),
    ("qpke.test", ["1011001110001"], 64),
    ("qpke.test", ["01" * 100], 300),
    ("qpke.prf", ["1" * 128, "0" * 7], 128),
    ("qpke.prf", ["10" * 64, "111000111"], 29),
]

if __name__ == "__main__":
    for tag, fields, out_bits in CASES:
        print(f"{tag}|{'|'.join(fields) if len(fields) > 1 else '-|' + fields[0]}|{out_bits}|"
              f"{sponge(tag, fields, out_bits)}")
