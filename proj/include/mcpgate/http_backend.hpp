/*
   Copyright 2026 The mcpgate Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <memory>
#include <string>

#include "mcpgate/probe.hpp"

namespace mcpgate {

// Bridges the probe contract to an external inference server.
//
// Wire protocol (all bodies JSON):
//   GET  /health            -> 200 when the engine can serve
//   POST /tokenize          {"word": w}                  -> {"ids": [..]}
//   POST /logits            {"prompt": p,
//                            "safe_token": id,
//                            "dangerous_token": id}      -> {"logit_safe": x,
//                                                            "logit_dangerous": y}
//   POST /session/snapshot  {}                           -> {"token": t}
//   POST /session/restore   {"token": t}                 -> {"ok": true|false}
//
// Transport or decode failures surface as not-ready / zero logits / failed
// restore; the gateway's fail-closed rules take it from there. Answer
// quality is the server's problem, not asserted here.
class HttpAdapterBackend : public ProbeBackend {
  public:
    HttpAdapterBackend(const std::string& host, int port, int timeout_ms = 2000);
    ~HttpAdapterBackend() override;

    bool ready() override;
    std::vector<int> tokenize(const std::string& word) override;
    std::pair<double, double> verbalizer_logits(const std::string& prompt_text) override;
    std::string snapshot_session() override;
    bool restore_session(const std::string& token) override;
    void set_verbalizer(const VerbalizerPair& pair) override { pair_ = pair; }

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    VerbalizerPair pair_;
};

}  // namespace mcpgate
