#include <stdio.h>
#include <string.h>

#include "eqtransfer.h"

static char *slurp(const char *path) {
    FILE *f = fopen(path, "rb");
    if (!f) return NULL;
    fseek(f, 0, SEEK_END);
    long n = ftell(f);
    fseek(f, 0, SEEK_SET);
    char *buf = malloc((size_t)n + 1);
    if (fread(buf, 1, (size_t)n, f) != (size_t)n) n = 0;
    buf[n] = '\0';
    fclose(f);
    return buf;
}

int main(int argc, char **argv) {
    if (argc != 2) return 10;
    char *text = slurp(argv[1]);
    if (!text) return 11;

    EtGame *game = NULL;
    if (et_game_from_json(text, &game) != ET_STATUS_OK) {
        fprintf(stderr, "%s\n", et_last_error());
        return 12;
    }
    free(text);

    bool determined = false;
    if (et_game_is_determined(game, &determined) != ET_STATUS_OK || !determined) return 13;

    char *result = NULL;
    if (et_game_transfer(game, &result) != ET_STATUS_OK) return 14;
    printf("%s\n", result);
    et_string_free(result);

    size_t profile[2] = {0, 0};
    bool ok = false;
    if (et_game_is_nash_equilibrium(game, profile, 2, &ok) != ET_STATUS_OK || !ok) return 15;

    if (et_game_from_json("{", &game) != ET_STATUS_INVALID_INPUT) return 16;
    if (et_last_error() == NULL) return 17;

    et_game_free(game);
    return 0;
}
