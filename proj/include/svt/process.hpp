#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace svt {

/// Replaces `{name}` placeholders; unknown placeholders are left untouched.
std::string expand_template(const std::string& tmpl, const std::map<std::string, std::string>& values);

/// Runs `command` through /bin/sh; throws ExternalProcessError on a nonzero exit.
void run_command(const std::string& command);

/// Quotes a path for /bin/sh.
std::string shell_quote(const std::string& text);

/// Scratch directory removed on destruction unless released.
class TempDir {
public:
    explicit TempDir(const std::string& prefix = "svt");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    TempDir(TempDir&& other) noexcept;
    TempDir& operator=(TempDir&&) = delete;

    const std::filesystem::path& path() const { return path_; }
    void keep() { keep_ = true; }

private:
    std::filesystem::path path_;
    bool keep_ = false;
};

}  // namespace svt
