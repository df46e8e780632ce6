# Unit tests for spikit modules
