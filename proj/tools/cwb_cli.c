/* The cwb command-line tool: a thin shim over the shared C API. */
#include <stdio.h>
#include <stdlib.h>

#include "cwb.h"

int main(int argc, char** argv) {
  char* report = NULL;
  int code = cwb_run(argc - 1, (const char* const*)(argv + 1), &report);
  if (report && report[0] != '\0') fputs(report, stdout);
  cwb_string_free(report);
  return code;
}
