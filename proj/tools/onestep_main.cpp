// Command-line front end; talks to the library exclusively through the
// C API in onestep/capi.h.
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "onestep/capi.h"

static void usage(FILE* to) {
  fprintf(to,
          "usage: onestep <command> [options]\n"
          "\n"
          "commands:\n"
          "  path       functional curve, tangent and one-step intercept for one path\n"
          "  multipath  several paths overlaid on a shared distance axis\n"
          "  simplex    surface of the isd functional over the 3-atom simplex\n"
          "  simulate   Monte Carlo bias/variance/coverage study (needs a seed)\n"
          "  rates      direction or kde convergence-rate sweeps\n"
          "\n"
          "options:\n"
          "  --config FILE      key=value config file\n"
          "  --seed N           RNG seed (required for stochastic commands)\n"
          "  --out DIR          output directory (default: config, then\n"
          "                     $ONESTEP_OUT_DIR, then ./out)\n"
          "  --functional NAME  isd | mean\n"
          "  --help             this text\n"
          "\n"
          "exit codes: 0 ok, 2 config/usage error, 3 numeric or i/o error\n");
}

int main(int argc, char** argv) {
  if (argc < 2) {
    usage(stderr);
    return 2;
  }
  if (strcmp(argv[1], "--help") == 0 || strcmp(argv[1], "-h") == 0) {
    usage(stdout);
    return 0;
  }
  const char* command = argv[1];
  const char* config_path = NULL;
  const char* out_dir = NULL;
  const char* functional = NULL;
  long long seed = 0;
  int has_seed = 0;

  for (int i = 2; i < argc; ++i) {
    const char* arg = argv[i];
    if (strcmp(arg, "--help") == 0 || strcmp(arg, "-h") == 0) {
      usage(stdout);
      return 0;
    }
    const char* value = NULL;
    if (i + 1 < argc) value = argv[i + 1];
    if (strcmp(arg, "--config") == 0 && value) {
      config_path = value;
      ++i;
    } else if (strcmp(arg, "--seed") == 0 && value) {
      char* end = NULL;
      seed = strtoll(value, &end, 10);
      if (!end || *end != '\0' || seed < 0) {
        fprintf(stderr, "onestep: --seed expects a nonnegative integer\n");
        return 2;
      }
      has_seed = 1;
      ++i;
    } else if (strcmp(arg, "--out") == 0 && value) {
      out_dir = value;
      ++i;
    } else if (strcmp(arg, "--functional") == 0 && value) {
      functional = value;
      ++i;
    } else {
      fprintf(stderr, "onestep: unknown or incomplete option '%s'\n", arg);
      usage(stderr);
      return 2;
    }
  }

  char* summary = NULL;
  const onestep_status status = onestep_run_command(
      command, config_path, out_dir, functional, seed, has_seed, &summary);
  if (status == ONESTEP_OK) {
    if (summary) {
      fputs(summary, stdout);
      onestep_string_free(summary);
    }
    return 0;
  }
  fprintf(stderr, "onestep: %s\n", onestep_last_error());
  switch (status) {
    case ONESTEP_ERR_CONFIG:
    case ONESTEP_ERR_INVALID_ARGUMENT:
      return 2;
    default:
      return 3;
  }
}
