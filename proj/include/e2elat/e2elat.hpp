#pragma once

#include "e2elat/app_server.hpp"
#include "e2elat/compose.hpp"
#include "e2elat/convolution.hpp"
#include "e2elat/core.hpp"
#include "e2elat/dimensioning.hpp"
#include "e2elat/distribution.hpp"
#include "e2elat/errors.hpp"
#include "e2elat/externals.hpp"
#include "e2elat/io.hpp"
#include "e2elat/queueing.hpp"
#include "e2elat/reference_values.hpp"
#include "e2elat/render.hpp"
#include "e2elat/reproduce.hpp"
#include "e2elat/scenario.hpp"
#include "e2elat/simulation.hpp"
#include "e2elat/transport.hpp"
