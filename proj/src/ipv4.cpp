// Copyright 2026 The netcfg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netcfg/ipv4.hpp"

#include <bit>
#include <charconv>

namespace netcfg {

std::optional<Ipv4> Ipv4::Parse(std::string_view text) {
  std::uint32_t value = 0;
  std::size_t pos = 0;
  for (int octet = 0; octet < 4; ++octet) {
    if (octet > 0) {
      if (pos >= text.size() || text[pos] != '.') return std::nullopt;
      ++pos;
    }
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    const std::size_t digits = pos - start;
    if (digits == 0 || digits > 3) return std::nullopt;
    unsigned part = 0;
    std::from_chars(text.data() + start, text.data() + pos, part);
    if (part > 255) return std::nullopt;
    value = (value << 8) | part;
  }
  if (pos != text.size()) return std::nullopt;
  return Ipv4(value);
}

Ipv4 Ipv4::MaskFromLength(int length) {
  if (length <= 0) return Ipv4(0);
  if (length >= 32) return Ipv4(0xffffffffu);
  return Ipv4(~((1u << (32 - length)) - 1u));
}

std::string Ipv4::str() const {
  std::string out;
  out.reserve(15);
  for (int shift = 24; shift >= 0; shift -= 8) {
    out += std::to_string((value_ >> shift) & 0xffu);
    if (shift > 0) out += '.';
  }
  return out;
}

bool Ipv4::IsContiguousMask() const {
  // ~mask + 1 is a power of two (or zero) exactly when ones lead.
  const std::uint32_t inverted = ~value_;
  return (inverted & (inverted + 1u)) == 0;
}

int Ipv4::PrefixLength() const { return std::countl_one(value_); }

Ipv4 AddressMatch::Low() const {
  const std::uint32_t base = prefix.value() & ~wildcard.value();
  const std::uint32_t wc = wildcard.value();
  if (wc == 0) return Ipv4(base);
  return Ipv4(base | (wc & (~wc + 1u)));
}

Ipv4 AddressMatch::High() const {
  return Ipv4((prefix.value() & ~wildcard.value()) | wildcard.value());
}

std::optional<AddressMatch> ParseCidr(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto address = Ipv4::Parse(text.substr(0, slash));
  if (!address) return std::nullopt;
  const auto len_text = text.substr(slash + 1);
  int length = -1;
  auto [ptr, ec] =
      std::from_chars(len_text.data(), len_text.data() + len_text.size(), length);
  if (ec != std::errc() || ptr != len_text.data() + len_text.size() ||
      length < 0 || length > 32 || len_text.size() > 2) {
    return std::nullopt;
  }
  const Ipv4 mask = Ipv4::MaskFromLength(length);
  return AddressMatch{Ipv4(address->value() & mask.value()), mask.Inverted()};
}

}  // namespace netcfg
