# Command-line tests driving spikit.cli.main
