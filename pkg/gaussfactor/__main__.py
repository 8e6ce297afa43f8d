from gaussfactor.main import main

main()
