// Copyright 2026 The qpke Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Key and ciphertext files: a 4-byte magic, the scheme header as JSON text
// and the layer's canonical payload, each length-prefixed.

#ifndef QPKE_TOOLS_FILES_H_
#define QPKE_TOOLS_FILES_H_

#include <span>
#include <string>

#include "config.h"
#include "qpke/bitstring.h"

namespace qpke::cli {

enum class FileKind { kSecretKey, kVerificationKey, kPublicKey, kCiphertext };

/// ".qsk", ".qvk", ".qpk", ".qct".
const char* extension(FileKind kind);

struct KeyFile {
  FileKind kind = FileKind::kSecretKey;
  SchemeConfig config;
  Bytes payload;
};

Bytes encode_file(const KeyFile& file);
/// Throws UsageError on a wrong magic, a malformed header or trailing bytes.
KeyFile decode_file(std::span<const std::uint8_t> bytes, FileKind expected);

/// Throw UsageError on I/O failure.
Bytes read_bytes(const std::string& path);
void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes);

KeyFile load(const std::string& path, FileKind expected);
void save(const std::string& path, const KeyFile& file);

}  // namespace qpke::cli

#endif  // QPKE_TOOLS_FILES_H_
