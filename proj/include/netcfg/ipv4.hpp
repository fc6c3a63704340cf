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

#ifndef NETCFG_IPV4_HPP_
#define NETCFG_IPV4_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace netcfg {

// A dotted-quad IPv4 value. Used for addresses, netmasks and wildcard masks
// alike; the role is given by the field that holds it.
class Ipv4 {
 public:
  constexpr Ipv4() = default;
  constexpr explicit Ipv4(std::uint32_t value) : value_(value) {}

  // Strict dotted quad: four decimal octets 0..255, no leading '+', no
  // surrounding whitespace, at most three digits per octet.
  static std::optional<Ipv4> Parse(std::string_view text);

  // Netmask with `length` leading one bits. `length` must be in [0, 32].
  static Ipv4 MaskFromLength(int length);

  constexpr std::uint32_t value() const { return value_; }
  std::string str() const;

  // True when the set bits form a single leading run (255.255.255.0 yes,
  // 255.0.255.0 no).
  bool IsContiguousMask() const;
  // Number of leading ones; only meaningful for contiguous masks.
  int PrefixLength() const;
  // Bitwise complement, netmask <-> wildcard.
  constexpr Ipv4 Inverted() const { return Ipv4(~value_); }

  friend constexpr auto operator<=>(Ipv4, Ipv4) = default;

 private:
  std::uint32_t value_ = 0;
};

// IOS-style address match: bits set in `wildcard` are "don't care".
struct AddressMatch {
  Ipv4 prefix;
  Ipv4 wildcard;

  static AddressMatch Any() { return {Ipv4(0), Ipv4(0xffffffffu)}; }
  static AddressMatch Host(Ipv4 address) { return {address, Ipv4(0)}; }

  bool Matches(Ipv4 address) const {
    const std::uint32_t care = ~wildcard.value();
    return (address.value() & care) == (prefix.value() & care);
  }
  bool IsAny() const { return wildcard.value() == 0xffffffffu; }
  bool IsHost() const { return wildcard.value() == 0; }

  // Lowest and highest addresses matched, used as representative samples.
  // For a wildcard with any don't-care bits, Low() sets only the lowest of
  // them (network+1 for a contiguous wildcard); High() sets all of them.
  Ipv4 Low() const;
  Ipv4 High() const;

  friend auto operator<=>(const AddressMatch&, const AddressMatch&) = default;
};

// Parses "a.b.c.d/len" into prefix + wildcard. The prefix is masked.
std::optional<AddressMatch> ParseCidr(std::string_view text);

// True when both addresses fall in the same subnet under `mask`.
inline bool SameSubnet(Ipv4 a, Ipv4 b, Ipv4 mask) {
  return (a.value() & mask.value()) == (b.value() & mask.value());
}

}  // namespace netcfg

#endif  // NETCFG_IPV4_HPP_
