# rollsieve - Reporters: activity log, CSV reports, prime stream output
