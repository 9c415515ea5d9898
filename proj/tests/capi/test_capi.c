// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

// Plain C client of the shared library.

#include <svaforge/svaforge.h>

#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                                                                   \
  do {                                                                                                                 \
    if (!(cond)) {                                                                                                     \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);                                                       \
      ++failures;                                                                                                      \
    }                                                                                                                  \
  } while (0)

static const char *kOriginal = "asrt: assert property (@(posedge i_clk) disable iff (tb_reset) "
                               "ctrl_comp |-> (term == (~mux_out + 1)) and !ctrl_comp |-> (term == mux_out));";
static const char *kParenthesized = "asrt: assert property (@(posedge i_clk) disable iff (tb_reset) "
                                    "(ctrl_comp |-> (term == (~mux_out + 1))) and (!ctrl_comp |-> (term == mux_out)));";
static const char *kCounter = "module pc_counter (input clock, input rst, input en, output reg [7:0] pc_addr);\n"
                              "always @(posedge clock or negedge rst) begin\n"
                              "  if (!rst) pc_addr <= 8'd0;\n"
                              "  else if (en) pc_addr <= pc_addr + 1;\n"
                              "end\nendmodule\n";

static void parse_errors(void) {
  svf_assertion *a = NULL;
  EXPECT(svf_assertion_parse("assert property (", &a) == SVF_ERR_PARSE);
  EXPECT(a == NULL);
  EXPECT(strlen(svf_last_error()) > 0);
  EXPECT(strcmp(svf_status_name(SVF_ERR_PARSE), "PARSE") == 0);
  EXPECT(svf_assertion_parse(NULL, &a) == SVF_ERR_INVALID_ARGUMENT);

  EXPECT(svf_assertion_extract("Here you go:\n```\nassert property (@(posedge clk) a |=> b);\n```", &a) == SVF_OK);
  char *text = NULL;
  EXPECT(svf_assertion_print(a, &text) == SVF_OK);
  EXPECT(text && strstr(text, "|=>") != NULL);
  svf_string_free(text);
  svf_assertion_free(a);
}

static void term_complement(void) {
  svf_assertion *orig = NULL, *paren = NULL;
  EXPECT(svf_assertion_parse(kOriginal, &orig) == SVF_OK);
  EXPECT(svf_assertion_parse(kParenthesized, &paren) == SVF_OK);
  svf_widths *w = svf_widths_new();
  EXPECT(svf_widths_parse(w, "ctrl_comp=1,term=4,mux_out=4") == SVF_OK);
  svf_bound b = svf_bound_default();
  b.max_len = 4;

  int taut = 0;
  EXPECT(svf_check_tautology(orig, w, &b, &taut) == SVF_OK);
  EXPECT(taut == 1);

  svf_report *r = NULL;
  EXPECT(svf_check_equivalent_free(orig, paren, w, &b, &r) == SVF_OK);
  EXPECT(svf_report_outcome(r) == SVF_DISTINGUISHED);
  EXPECT(svf_report_positive(r) == 0);
  char *json = NULL;
  EXPECT(svf_report_json(r, &json) == SVF_OK);
  EXPECT(json && strstr(json, "\"witness\"") != NULL);
  svf_string_free(json);
  svf_report_free(r);

  svf_widths *wide = svf_widths_new();
  EXPECT(svf_widths_parse(wide, "ctrl_comp:1 term:16 mux_out:16") == SVF_OK);
  EXPECT(svf_check_equivalent_free(orig, paren, wide, &b, &r) == SVF_ERR_BOUND);

  svf_widths_free(wide);
  svf_widths_free(w);
  svf_assertion_free(orig);
  svf_assertion_free(paren);
}

static void counter(void) {
  svf_design *d = NULL;
  EXPECT(svf_design_parse(kCounter, NULL, 0, &d) == SVF_OK);
  char *info = NULL;
  EXPECT(svf_design_info_json(d, &info) == SVF_OK);
  EXPECT(info && strstr(info, "pc_counter") != NULL);
  svf_string_free(info);

  svf_assertion *inc = NULL, *bad = NULL;
  EXPECT(svf_assertion_parse("assert property (@(posedge clock) disable iff (tb_reset) "
                             "en |=> pc_addr == $past(pc_addr) + 1);",
                             &inc) == SVF_OK);
  EXPECT(svf_assertion_parse("assert property (@(posedge clock) disable iff (tb_reset) "
                             "en |=> pc_addr == $past(pc_addr));",
                             &bad) == SVF_OK);
  svf_bound b = svf_bound_default();
  b.max_len = 5;
  svf_report *r = NULL;
  EXPECT(svf_check_holds(inc, d, &b, &r) == SVF_OK);
  EXPECT(svf_report_outcome(r) == SVF_HOLDS);
  svf_report_free(r);
  EXPECT(svf_check_holds(bad, d, &b, &r) == SVF_OK);
  EXPECT(svf_report_outcome(r) == SVF_FAILS);
  char *text = NULL;
  EXPECT(svf_report_text(r, &text) == SVF_OK);
  EXPECT(text && strstr(text, "en") != NULL);
  svf_string_free(text);
  svf_report_free(r);

  svf_design *broken = NULL;
  EXPECT(svf_design_parse("module m(input a;\n", NULL, 0, &broken) != SVF_OK);
  EXPECT(broken == NULL);
  svf_assertion_free(inc);
  svf_assertion_free(bad);
  svf_design_free(d);
}

static void metrics(void) {
  double v = 0;
  EXPECT(svf_func_at_k(4, 2, 2, &v) == SVF_OK);
  EXPECT(v > 0.8333333333 && v < 0.8333333334);
  EXPECT(svf_func_at_k(4, 2, 5, &v) == SVF_ERR_INVALID_ARGUMENT);
  EXPECT(svf_diversity("/nonexistent/corpus.txt", 3, 100, 0, &v) == SVF_ERR_IO);
}

int main(void) {
  EXPECT(strlen(svf_version()) > 0);
  parse_errors();
  term_complement();
  counter();
  metrics();
  if (failures)
    fprintf(stderr, "%d failures\n", failures);
  else
    printf("ok\n");
  return failures ? 1 : 0;
}
