# Management commands for point matching runs
