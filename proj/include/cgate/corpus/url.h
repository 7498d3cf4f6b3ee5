#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace cgate::corpus {

struct ParsedUrl {
  std::string scheme;  // lower-case
  std::string host;    // lower-case, no trailing dot; IPv6 keeps brackets
  std::string path;    // path plus "?query", always starting with '/'
};

// Absolute URLs only; nullopt for schemeless or host-less input.
std::optional<ParsedUrl> ParseUrl(std::string_view url);

bool IsIpAddress(std::string_view host);

// eTLD+1 of a host, using the ICANN section of the bundled public suffix
// list. IP addresses come back unchanged; a host that is itself a public
// suffix is returned as is.
std::string RegistrableDomainOfHost(std::string_view host);

// Throws InputError ("no host") for schemeless or relative URLs.
std::string RegistrableDomain(std::string_view url);

}  // namespace cgate::corpus
