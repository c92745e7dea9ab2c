#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace relex::io {

std::string read_file(const std::string& path);

// Writes to "<path>.tmp" then renames, so readers never observe a partial
// file and failed runs never corrupt prior results.
void atomic_write(const std::string& path, std::string_view content);

void ensure_dir(const std::string& dir);

// Non-blank lines with 1-based line numbers; blank lines are skipped but
// still counted so error messages match editors.
void for_each_line(const std::string& path,
                   const std::function<void(std::size_t, const std::string&)>& fn);

// Filesystem-safe name component: [A-Za-z0-9_.-] kept, everything else '-'.
std::string sanitize_component(std::string_view s);

}  // namespace relex::io
