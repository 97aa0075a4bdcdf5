# rollsieve - Allow running as python -m rollsieve
from rollsieve.cli import main

if __name__ == "__main__":
    main()
