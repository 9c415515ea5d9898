// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/verify/external.hpp"

#include "svaforge/common/error.hpp"
#include "svaforge/sva/printer.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>

namespace svaforge::verify {

namespace {

namespace fs = std::filesystem;

class TempDir {
public:
  TempDir() {
    std::random_device rd;
    for (int attempt = 0; attempt < 16; ++attempt) {
      fs::path p = fs::temp_directory_path() / ("svaforge-" + std::to_string(rd()));
      if (fs::create_directory(p)) {
        path_ = p;
        return;
      }
    }
    throw Error(ErrorKind::Io, "cannot create a temporary directory");
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string write(const std::string &name, const std::string &content) const {
    fs::path p = path_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

private:
  fs::path path_;
};

void replace_all(std::string &s, const std::string &from, const std::string &to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

// Runs the tool; true when it reports the property proven.
bool run(const ExternalAdapter &ad, const std::map<std::string, std::string> &files) {
  if (ad.command.empty())
    throw Error(ErrorKind::ToolUnavailable, "no external verifier command configured");
  std::string cmd = ad.command;
  for (const auto &[key, path] : files)
    replace_all(cmd, "{" + key + "}", "'" + path + "'");

  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    throw Error(ErrorKind::ToolUnavailable, "cannot start: " + cmd);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  auto it = ad.exit_codes.find(code);
  if (it == ad.exit_codes.end())
    throw Error(ErrorKind::ToolUnavailable, "external verifier exited with status " + std::to_string(code));
  if (it->second == "pass")
    return true;
  if (it->second == "fail")
    return false;
  try {
    if (std::regex_search(out, std::regex(ad.pass_regex)))
      return true;
    if (std::regex_search(out, std::regex(ad.fail_regex)))
      return false;
  } catch (const std::regex_error &e) {
    throw Error(ErrorKind::Config, std::string("bad verdict regex: ") + e.what());
  }
  std::string head = out.substr(0, 200);
  throw Error(ErrorKind::UnparseableToolOutput, "no verdict in external verifier output: " + head);
}

} // namespace

CheckReport external_check(const sva::Assertion &a1, const sva::Assertion &a2, const ExternalAdapter &adapter) {
  TempDir dir;
  bool pass = run(adapter, {{"file1", dir.write("a1.sv", sva::print_assertion(a1) + "\n")},
                            {"file2", dir.write("a2.sv", sva::print_assertion(a2) + "\n")}});
  CheckReport rep;
  rep.mode = "external";
  rep.outcome = pass ? Outcome::Equivalent : Outcome::Distinguished;
  return rep;
}

CheckReport external_check(const sva::Assertion &a, const rtl::DesignUnit &d, const ExternalAdapter &adapter) {
  TempDir dir;
  bool pass = run(adapter, {{"file1", dir.write("a.sv", sva::print_assertion(a) + "\n")},
                            {"design", dir.write("design.v", d.source)}});
  CheckReport rep;
  rep.mode = "external";
  rep.outcome = pass ? Outcome::Holds : Outcome::Fails;
  return rep;
}

} // namespace svaforge::verify
