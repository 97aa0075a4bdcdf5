# rollsieve tests
