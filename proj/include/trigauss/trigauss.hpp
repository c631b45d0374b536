#pragma once

// Convenience umbrella: pulls in the whole library.

#include "core.hpp"
#include "models.hpp"
#include "criteria.hpp"
#include "oracle.hpp"
#include "sweep.hpp"
