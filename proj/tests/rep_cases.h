#pragma once

// Hand-derived robots.txt conformance cases, shared by the unit tests and the
// acceptance binary. `status` 0 means the file was fetched successfully.

#include <string_view>

namespace cgate::testing {

struct RepCase {
  std::string_view name;
  std::string_view robots;
  std::string_view agent;
  std::string_view path;
  int status;
  bool allowed;
};

inline constexpr RepCase kRepCases[] = {
    // Group selection
    {"specific group beats star", "User-agent: *\nDisallow: /\n\nUser-agent: GPTBot\nAllow: /\n", "GPTBot", "/a", 0, true},
    {"star group applies to unnamed agent", "User-agent: *\nDisallow: /\n\nUser-agent: GPTBot\nAllow: /\n", "CCBot", "/a", 0, false},
    {"agent match is case-insensitive", "User-agent: gptbot\nDisallow: /\n", "GPTBot", "/x", 0, false},
    {"no matching group and no star", "User-agent: GPTBot\nDisallow: /\n", "CCBot", "/x", 0, true},
    {"specific group does not inherit star rules", "User-agent: *\nDisallow: /private\n\nUser-agent: CCBot\nDisallow: /tmp\n", "CCBot", "/private", 0, true},
    {"versioned agent falls back to product token", "User-agent: CCBot\nDisallow: /\n", "CCBot/2.0", "/", 0, false},
    {"versioned group wins over product group", "User-agent: CCBot\nDisallow: /\n\nUser-agent: CCBot/2.0\nAllow: /\n", "CCBot/2.0", "/", 0, true},
    {"product token does not match longer token", "User-agent: GPTBot-Extended\nDisallow: /\n", "GPTBot", "/", 0, true},
    {"multiple user-agent lines share a group", "User-agent: GPTBot\nUser-agent: CCBot\nDisallow: /\n", "CCBot", "/", 0, false},
    {"user-agent comment after token ignored", "User-agent: CCBot # common crawl\nDisallow: /\n", "CCBot", "/x", 0, false},
    {"rules before any user-agent are ignored", "Disallow: /\nUser-agent: *\nAllow: /\n", "GPTBot", "/x", 0, true},

    // Group merging
    {"repeated groups for same agent merge", "User-agent: GPTBot\nDisallow: /a\n\nUser-agent: GPTBot\nDisallow: /b\n", "GPTBot", "/b/1", 0, false},
    {"merged groups keep first group's rules", "User-agent: GPTBot\nDisallow: /a\n\nUser-agent: GPTBot\nDisallow: /b\n", "GPTBot", "/a/1", 0, false},
    {"agent named in two different groups merges both", "User-agent: GPTBot\nUser-agent: CCBot\nDisallow: /a\n\nUser-agent: GPTBot\nDisallow: /b\n", "GPTBot", "/a", 0, false},
    {"star groups merge", "User-agent: *\nDisallow: /a\n\nUser-agent: *\nDisallow: /b\n", "X", "/b", 0, false},

    // Longest match and ties
    {"longer allow beats shorter disallow", "User-agent: *\nDisallow: /folder\nAllow: /folder/page\n", "X", "/folder/page.html", 0, true},
    {"longer disallow beats shorter allow", "User-agent: *\nAllow: /folder\nDisallow: /folder/secret\n", "X", "/folder/secret/1", 0, false},
    {"allow wins equal-length tie", "User-agent: *\nDisallow: /page\nAllow: /page\n", "X", "/page", 0, true},
    {"allow wins tie regardless of order", "User-agent: *\nAllow: /page\nDisallow: /page\n", "X", "/page", 0, true},
    {"rule order does not matter", "User-agent: *\nAllow: /a/b\nDisallow: /a\n", "X", "/a/b/c", 0, true},
    {"unmatched path is allowed", "User-agent: *\nDisallow: /private\n", "X", "/public", 0, true},
    {"prefix match is byte-wise", "User-agent: *\nDisallow: /fish\n", "X", "/fish.html", 0, false},
    {"path match is case-sensitive", "User-agent: *\nDisallow: /Fish\n", "X", "/fish", 0, true},
    {"disallow root blocks everything", "User-agent: *\nDisallow: /\n", "X", "/any/thing?q=1", 0, false},
    {"empty path treated as root", "User-agent: *\nDisallow: /\n", "X", "", 0, false},

    // Wildcards and anchors
    {"star matches any sequence", "User-agent: *\nDisallow: /*.php\n", "X", "/index.php?x=1", 0, false},
    {"star can match empty", "User-agent: *\nDisallow: /a*b\n", "X", "/ab", 0, false},
    {"dollar anchors end", "User-agent: *\nDisallow: /*.php$\n", "X", "/index.php", 0, false},
    {"dollar rejects trailing text", "User-agent: *\nDisallow: /*.php$\n", "X", "/index.php?x=1", 0, true},
    {"dollar exact path", "User-agent: *\nDisallow: /$\n", "X", "/", 0, false},
    {"dollar exact path does not cover children", "User-agent: *\nDisallow: /$\n", "X", "/page", 0, true},
    {"multiple stars", "User-agent: *\nDisallow: /*/private/*\n", "X", "/u/private/x", 0, false},
    {"wildcard allow beats shorter disallow", "User-agent: *\nDisallow: /\nAllow: /*.css$\n", "X", "/s/site.css", 0, true},
    {"trailing star is redundant", "User-agent: *\nDisallow: /fish*\n", "X", "/fishheads", 0, false},
    {"star not in path position misses", "User-agent: *\nDisallow: /*secret\n", "X", "/public", 0, true},

    // Empty disallow and directives
    {"empty disallow allows all", "User-agent: *\nDisallow:\n", "X", "/x", 0, true},
    {"empty disallow with specific disallow", "User-agent: *\nDisallow:\nDisallow: /a\n", "X", "/a", 0, false},
    {"unknown directives ignored", "User-agent: *\nCrawl-delay: 10\nSitemap: https://a/s.xml\nDisallow: /x\n", "X", "/x", 0, false},
    {"directive keys are case-insensitive", "USER-AGENT: *\nDISALLOW: /x\n", "X", "/x", 0, false},
    {"comment lines ignored", "# hello\nUser-agent: * # all\nDisallow: /x # no\n", "X", "/x", 0, false},
    {"crlf line endings", "User-agent: *\r\nDisallow: /x\r\n", "X", "/x", 0, false},
    {"empty file allows all", "", "X", "/x", 0, true},
    {"robots.txt itself always allowed", "User-agent: *\nDisallow: /\n", "X", "/robots.txt", 0, true},

    // Percent-encoding
    {"encoded pattern matches decoded path", "User-agent: *\nDisallow: /%7Ejoe\n", "X", "/~joe/index", 0, false},
    {"encoded path matches plain pattern", "User-agent: *\nDisallow: /~joe\n", "X", "/%7ejoe/index", 0, false},
    {"encoded slash is not a separator", "User-agent: *\nDisallow: /a/b\n", "X", "/a%2Fb", 0, true},

    // Fetch status
    {"4xx means allow all", "User-agent: *\nDisallow: /\n", "X", "/x", 404, true},
    {"401 also allows all", "", "X", "/x", 401, true},
    {"5xx means disallow all", "", "X", "/x", 503, false},
    {"500 means disallow all even for robots path", "", "X", "/robots.txt", 500, false},
};

}  // namespace cgate::testing
