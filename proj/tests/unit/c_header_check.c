/* Compiled as C to keep the public header free of C++-only constructs. */
#include "simo/simo_lqr.h"

int main(void) {
    simo_robot_params p;
    simo_system* sys = 0;
    simo_robot_default_params(&p);
    if (simo_robot_create(&p, &sys) != SIMO_OK) return 1;
    simo_system_free(sys);
    return 0;
}
