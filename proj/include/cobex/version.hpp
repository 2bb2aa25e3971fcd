#pragma once

#define COBEX_VERSION_MAJOR 0
#define COBEX_VERSION_MINOR 3
#define COBEX_VERSION_PATCH 0
#define COBEX_VERSION_STRING "0.3.0"
