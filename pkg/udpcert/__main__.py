# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

from udpcert.commands.udpcert import main

if __name__ == "__main__":
    main()
