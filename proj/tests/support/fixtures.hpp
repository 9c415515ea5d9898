// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace svaforge::testing {

inline const std::string kTermComplementOriginal = R"(asrt_term_complement: assert property (
    @(posedge i_clk) disable iff (tb_reset)
    ctrl_comp |-> (term == (~mux_out + 1))
    and !ctrl_comp |-> (term == mux_out)
);)";

inline const std::string kTermComplementParenthesized = R"(asrt_term_complement: assert property (
    @(posedge i_clk) disable iff (tb_reset)
    (ctrl_comp |-> (term == (~mux_out + 1)))
    and (!ctrl_comp |-> (term == mux_out))
);)";

inline const std::string kCmdBusy = R"(asrt: assert property (
    @(posedge clk) disable iff (tb_reset)
    (cmd_valid && !busy) |=> busy
);)";

inline const std::string kCounterRtl = R"(module pc_counter (
    input clock,
    input rst,
    input en,
    output reg [7:0] pc_addr
);
always @(posedge clock or negedge rst) begin
    if (!rst)
        pc_addr <= 8'd0;
    else begin
        if(en) pc_addr <= pc_addr+1;
        else pc_addr <= pc_addr;
    end
end
endmodule
)";

inline const std::string kCounterSpec =
    "Program counter with an 8-bit address pc_addr. While en is high the address advances by one on every "
    "clock; rst (active low) clears it.";

inline const std::string kCmdCtrlRtl = R"(module cmd_ctrl (
    input clk,
    input reset,
    input cmd_valid,
    input [1:0] cmd,
    input done,
    output reg busy,
    output reg [1:0] cmd_reg
);
always @(posedge clk or posedge reset) begin
    if (reset) begin
        busy <= 1'b0;
        cmd_reg <= 2'd0;
    end else begin
        if (cmd_valid == 1) begin
            cmd_reg <= cmd;
            busy <= 1;
        end else if (done) begin
            busy <= 0;
        end
    end
end
endmodule
)";

} // namespace svaforge::testing
