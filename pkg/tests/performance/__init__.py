# Kernel oracle, SPI grid and determinism runs
