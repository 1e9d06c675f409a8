#pragma once

#include "jacmax/embedding.hpp"
#include "jacmax/group_suites.hpp"
#include "jacmax/lie.hpp"
#include "jacmax/matrix_group.hpp"
#include "jacmax/mod_matrix.hpp"
#include "jacmax/serre.hpp"
#include "jacmax/symplectic.hpp"
