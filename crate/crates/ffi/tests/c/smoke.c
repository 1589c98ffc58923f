#include <stdio.h>
#include <string.h>

#include "koszulcat.h"

static const char *DUAL =
    "field = \"Q\"\n"
    "[monoid]\n"
    "kind = \"algebra\"\n"
    "basis = [\"1\", \"x\"]\n"
    "unit = \"1\"\n"
    "products = [[\"x\", \"x\", \"0\"]]\n";

int main(void) {
    KzProblem *problem = NULL;
    if (kz_problem_from_str(DUAL, "dual.kz", NULL, &problem) != KZ_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", kz_last_error_message());
        return 10;
    }
    KzReport *report = NULL;
    if (kz_koszul(problem, "x", true, &report) != KZ_STATUS_OK) {
        fprintf(stderr, "koszul: %s\n", kz_last_error_message());
        return 11;
    }
    char *json = kz_report_json(report);
    int ok = json != NULL && strstr(json, "\"regular sequence\"") != NULL && !kz_report_passed(report);
    kz_string_free(json);
    kz_report_free(report);

    KzStatus s = kz_koszul(problem, "x + (", false, &report);
    ok = ok && s == KZ_STATUS_INPUT_ERROR && report == NULL && kz_last_error_message() != NULL;
    kz_problem_free(problem);
    printf("%s %s\n", kz_version(), ok ? "ok" : "failed");
    return ok ? 0 : 1;
}
