#pragma once

#include "torsionlab/cw_complex.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/free_group.hpp"
#include "torsionlab/laurent.hpp"
#include "torsionlab/presentation.hpp"
#include "torsionlab/ruelle.hpp"
#include "torsionlab/twisted_alexander.hpp"
#include "torsionlab/unitary_rep.hpp"
