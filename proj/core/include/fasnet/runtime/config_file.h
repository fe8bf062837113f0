// core/include/fasnet/runtime/config_file.h

// Copyright 2026 fasnet project contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef FASNET_RUNTIME_CONFIG_FILE_H_
#define FASNET_RUNTIME_CONFIG_FILE_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fasnet {
namespace runtime {

// Parses "key = value" lines. '#' starts a comment, blank lines are skipped,
// keys and values are trimmed. Duplicate keys are rejected.
std::map<std::string, std::string> read_key_value_file(
    const std::string& path);

std::map<std::string, std::string> parse_key_values(const std::string& text);

void write_key_value_file(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& entries);

// Strict scalar parsers: the whole token must be consumed.
double parse_double(const std::string& key, const std::string& value);
long parse_long(const std::string& key, const std::string& value);
bool parse_bool(const std::string& key, const std::string& value);

}  // namespace runtime
}  // namespace fasnet

#endif  // FASNET_RUNTIME_CONFIG_FILE_H_
