// Copyright 2026 The bosonmon Authors
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

#ifndef BOSONMON_CLI_H
#define BOSONMON_CLI_H

#include <iosfwd>

namespace bosonmon {

/// Entry point of the `bosonmon` tool. Subcommands: purify, learn, noise,
/// analyze, hw. Returns 0 on success, 2 on usage or configuration errors (the
/// message names the offending key), 1 on runtime failures.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace bosonmon

#endif
