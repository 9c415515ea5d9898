// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/llm/templates.hpp"

#include "svaforge/common/error.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace svaforge::llm {

namespace {

const std::vector<std::string> kPlaceholders = {"spec", "code", "nl", "sva", "signals", "error_taxonomy"};

// Built-in prompt texts; TemplateSet::load_dir overrides them per file.
const char *const kPropertyAnalysisText = R"(You will receive the specification of a hardware module and its Verilog source. List the properties a verification engineer should check on this design. Write every property as one self-contained sentence on its own line, in the form "Property <n>: <text>".

Example:

### Specification

A 4-bit up counter with a synchronous active-high clear input. The count wraps to zero after 15.

### Code Implementation

```verilog
always @(posedge clk) begin
    if (clear) count <= 4'd0;
    else count <= count + 4'd1;
end
```

[Response]

Property 1: After clear is asserted, the count is zero on the next cycle.
Property 2: While clear is low, the count increases by one every cycle and wraps from 15 to 0.

Now the task.

### Specification

{spec}

### Code Implementation

```verilog
{code}
```

[Response]
)";

const char *const kNl2SvaText = R"(You will receive a Verilog design and a natural-language property of that design. Write one SystemVerilog assertion that checks the property. Refer only to the signals listed below, clock the assertion on the design clock, and guard it with `disable iff (tb_reset)`. Reply with a single fenced code block holding `label: assert property (...);`.

### Hardware Design

```verilog
{code}
```

### Signals

{signals}

### Property

{nl}

[Response]
)";

const char *const kSva2NlText = R"(You will receive a Verilog design and a SystemVerilog assertion written for it. State in plain English the behavior the assertion checks. Reply with the description only, one or two sentences, naming signals exactly as they are written.

Example:

### Hardware Design

```verilog
always @(posedge clk) begin
    if (load) q <= d;
end
```

### SVA

```systemverilog
asrt: assert property (
    @(posedge clk) disable iff (tb_reset)
    load |=> (q == $past(d))
);
```

[Response]

Whenever load is high, q must hold the previous cycle's value of d one cycle later.

Now the task.

### Hardware Design

```verilog
{code}
```

### SVA

```systemverilog
{sva}
```

[Response]
)";

const char *const kJudgeText = R"(You will receive a Verilog design, a natural-language property, and a SystemVerilog assertion meant to implement the property. Decide whether the assertion checks exactly the property. Look for these error types:

{error_taxonomy}

Explain briefly, then finish with exactly one line, either
VERDICT: ACCEPT
or
VERDICT: REJECT(<comma-separated error types>)

### Hardware Design

```verilog
{code}
```

### Property

{nl}

### SVA

```systemverilog
{sva}
```

[Response]
)";

const char *const kReasoningText = R"(You will receive a Verilog design and a natural-language property of that design. Work out the required behavior step by step between <think> and </think>. After the closing tag, reply with one SystemVerilog assertion for the property in a fenced code block, guarded by `disable iff (tb_reset)`.

### Hardware Design

```verilog
{code}
```

### Signals

{signals}

### Property

{nl}

[Response]
)";

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

const std::vector<std::string> &PromptTemplate::required(const std::string &id) {
  static const std::map<std::string, std::vector<std::string>> req = {
      {kPropertyAnalysis, {"spec", "code"}},
      {kNl2Sva, {"code", "signals", "nl"}},
      {kSva2Nl, {"code", "sva"}},
      {kJudge, {"error_taxonomy", "code", "nl", "sva"}},
      {kReasoning, {"code", "signals", "nl"}},
  };
  auto it = req.find(id);
  if (it == req.end())
    throw Error(ErrorKind::InvalidArgument, "unknown template id " + id);
  return it->second;
}

std::string PromptTemplate::render(const Bindings &b) const {
  std::string out;
  out.reserve(text.size() + 1024);
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j]))
        ++j;
      if (j < text.size() && text[j] == '}') {
        std::string name = text.substr(i + 1, j - i - 1);
        if (std::find(kPlaceholders.begin(), kPlaceholders.end(), name) != kPlaceholders.end()) {
          auto it = b.find(name);
          if (it == b.end())
            throw Error(ErrorKind::InvalidArgument, "template " + id + " needs a binding for {" + name + "}");
          out += it->second;
          i = j + 1;
          continue;
        }
      }
    }
    out += text[i++];
  }
  return out;
}

TemplateSet::TemplateSet() {
  for (const auto &id : ids())
    set(id, default_text(id));
}

const std::vector<std::string> &TemplateSet::ids() {
  static const std::vector<std::string> v = {kPropertyAnalysis, kNl2Sva, kSva2Nl, kJudge, kReasoning};
  return v;
}

std::string TemplateSet::default_text(const std::string &id) {
  if (id == kPropertyAnalysis)
    return kPropertyAnalysisText;
  if (id == kNl2Sva)
    return kNl2SvaText;
  if (id == kSva2Nl)
    return kSva2NlText;
  if (id == kJudge)
    return kJudgeText;
  if (id == kReasoning)
    return kReasoningText;
  throw Error(ErrorKind::InvalidArgument, "unknown template id " + id);
}

void TemplateSet::set(const std::string &id, std::string text) {
  for (const auto &p : PromptTemplate::required(id))
    if (text.find("{" + p + "}") == std::string::npos)
      throw Error(ErrorKind::Config, "template " + id + " lacks placeholder {" + p + "}");
  templates_[id] = PromptTemplate{id, std::move(text)};
}

void TemplateSet::load_dir(const std::string &dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw Error(ErrorKind::Config, "template directory not found: " + dir);
  for (const auto &id : ids()) {
    fs::path p = fs::path(dir) / (id + ".txt");
    if (!fs::exists(p))
      continue;
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    set(id, ss.str());
  }
}

const PromptTemplate &TemplateSet::get(const std::string &id) const {
  auto it = templates_.find(id);
  if (it == templates_.end())
    throw Error(ErrorKind::InvalidArgument, "unknown template id " + id);
  return it->second;
}

} // namespace svaforge::llm
