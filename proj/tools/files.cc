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


#include "files.h"

#include <fstream>
#include <iterator>

#include "qpke/serialize.h"

namespace qpke::cli {

namespace {

const char* magic(FileKind kind) {
  switch (kind) {
    case FileKind::kSecretKey:
      return "QSK1";
    case FileKind::kVerificationKey:
      return "QVK1";
    case FileKind::kPublicKey:
      return "QPK1";
    case FileKind::kCiphertext:
      return "QCT1";
  }
  return "????";
}

}  // namespace

const char* extension(FileKind kind) {
  switch (kind) {
    case FileKind::kSecretKey:
      return ".qsk";
    case FileKind::kVerificationKey:
      return ".qvk";
    case FileKind::kPublicKey:
      return ".qpk";
    case FileKind::kCiphertext:
      return ".qct";
  }
  return "";
}

Bytes encode_file(const KeyFile& file) {
  ByteWriter w;
  for (const char* p = magic(file.kind); *p; ++p) w.put_u8(static_cast<std::uint8_t>(*p));
  const std::string header = file.config.to_json().dump();
  w.put_bytes(std::span(reinterpret_cast<const std::uint8_t*>(header.data()), header.size()));
  w.put_bytes(file.payload);
  return std::move(w).bytes();
}

KeyFile decode_file(std::span<const std::uint8_t> bytes, FileKind expected) {
  try {
    ByteReader r(bytes);
    std::string m;
    for (int i = 0; i < 4; ++i) m.push_back(static_cast<char>(r.get_u8()));
    if (m != magic(expected)) {
      throw UsageError(std::string("not a ") + extension(expected) + " file");
    }
    const Bytes header = r.get_bytes();
    KeyFile file;
    file.kind = expected;
    file.config = SchemeConfig::from_json(
        nlohmann::ordered_json::parse(std::string(header.begin(), header.end())));
    file.payload = r.get_bytes();
    r.expect_done();
    return file;
  } catch (const ParseError& e) {
    throw UsageError(std::string("corrupt ") + extension(expected) + " file: " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("corrupt ") + extension(expected) + " header: " + e.what());
  }
}

Bytes read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw UsageError("short write to " + path);
}

KeyFile load(const std::string& path, FileKind expected) {
  return decode_file(read_bytes(path), expected);
}

void save(const std::string& path, const KeyFile& file) { write_bytes(path, encode_file(file)); }

}  // namespace qpke::cli
