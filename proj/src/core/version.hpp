#pragma once

#define BACKSTEP_VERSION "0.1.0"
